pub mod acceptance;
pub mod canon;
pub mod constructions;
pub mod copies;
pub mod enumerate;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod matrix;
pub mod poly;
pub mod spectral;
pub mod verify;
