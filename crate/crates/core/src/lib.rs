pub mod geometry;
pub mod loops;
pub mod pi1;
pub mod report;
pub mod spaces;
pub mod words;
