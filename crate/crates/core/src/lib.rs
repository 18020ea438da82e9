pub mod cli;
pub mod coloring;
pub mod constructions;
pub mod hg_semiring;
pub mod hypergraph;
pub mod semiring;
pub mod terms;
pub mod words;
