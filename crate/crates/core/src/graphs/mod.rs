//! Multi-digraphs, flows on complete digraphs, abstraction and cycles.

pub mod abstraction;
pub mod cycles;
pub mod flow;
pub mod iso;
pub mod mdgraph;
pub mod subflows;

pub use abstraction::{abstract_flow, abstract_graph, is_abstract};
pub use cycles::{hamiltonian_cycles, positive_flow, removable_edge};
pub use flow::{outflow, CompleteDigraphFlow, Flow, IntFlow};
pub use iso::isomorphic;
pub use mdgraph::{connectivity, Connectivity, MDGraph};
pub use subflows::{for_each_sub_circulation, sub_circulations};
