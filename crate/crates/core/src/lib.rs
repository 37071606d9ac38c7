pub mod symbolic;
pub mod flag;
pub mod euler;
pub mod link;
pub mod series;
