//! Finite heaps, trusses and modules over trusses, together with the
//! symbolic classification of truss structures on the integers.

pub mod cli;
pub mod config;
pub mod constructions;
pub mod heap;
pub mod hom;
pub mod modules;
pub mod truss;
pub mod ztruss;

pub use config::Limits;
pub use heap::{Element, FiniteHeap, HeapError, HeapMorphism, HeapSource, MorphismReport, SubHeap};
pub use truss::{FiniteTruss, Side, SpecialElements, SubStructureReport, SubstructureKind, TrussError};
