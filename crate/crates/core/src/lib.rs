pub mod canon;
pub mod catalog;
pub mod cycles;
pub mod export;
pub mod graph;
pub mod incidence;
pub mod levi;
pub mod music;
pub mod progression;
pub mod reference_tables;
pub mod score;
pub mod verify;
