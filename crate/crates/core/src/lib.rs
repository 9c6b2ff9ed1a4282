//! Exact random-walk hitting times on undirected graphs and selection of
//! sink sets that minimise the total expected hitting time.
//!
//! ```
//! use sinkopt::{Evaluator, Graph, NodeSet};
//!
//! let g = Graph::parse_edge_list("1 2\n2 3\n").unwrap().graph;
//! let ev = Evaluator::new(&g);
//! let centre = g.set_from_labels(&[2]).unwrap();
//! assert_eq!(ev.objective(&centre).unwrap(), 2.0);
//! assert_eq!(ev.objective(&NodeSet::full(3)).unwrap(), 0.0);
//! ```

pub mod bounds;
pub mod candidates;
pub mod cli;
pub mod cover;
pub mod error;
pub mod graph;
pub mod hitting;
mod linalg;
pub mod optimizer;
pub mod rank;
pub mod report;
pub mod subsets;

pub use error::{Error, Result};
pub use graph::{Graph, NodeSet, ParsedGraph};
pub use hitting::{hitting_times, Evaluator, HittingProfile};
pub use rank::RankContext;
