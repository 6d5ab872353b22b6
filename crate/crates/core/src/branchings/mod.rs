//! Decompositions of digraphs into degree-f branchings.
//!
//! The building blocks are a bipartite f-coloring ([`hakimi_kariv_color`]),
//! the auxiliary bipartite graph of a digraph, monochromatic cycle
//! extraction and independent transversals. On top of them sit the
//! large-girth pipeline (d + 1 classes), the trivial route (2d classes),
//! the random vertex coloring with local resampling and the asymptotic
//! pipeline built from residue classes of that coloring.

mod coloring;
mod cycles;
mod lll;
mod pipeline;
mod transversal;

pub use coloring::{aux_bipartite, hakimi_kariv_color, pseudoforests_from_coloring, AuxBipartite, NotBipartite};
pub use cycles::{monochromatic_cycles, CopyIndex, MonochromaticCycle};
pub use lll::{check_lemma_bounds, lll_vertex_coloring, LllError, VertexColoring, RESAMPLING_CAP};
pub use pipeline::{
    decompose_asymptotic, decompose_large_girth, decompose_trivial, decompose_undirected,
    AsymptoticOutcome, AsymptoticStats, DecomposeError, Fallback, LargeGirthError, LargeGirthOutcome,
    LargeGirthStats, Route, TrivialOutcome, UndirectedMode, UndirectedOutcome, BUDGET_CONSTANT,
};
pub use transversal::{independent_transversal, Transversal, TransversalError, TransversalPhase, TransversalReport};
