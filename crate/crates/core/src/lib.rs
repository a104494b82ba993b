//! Indexed streams: iterators over key-ordered associative arrays that can
//! skip ahead with `seek`, composed with fusing combinators and evaluated into
//! containers of the caller's choice.

pub mod batch;
pub mod combinators;
pub mod counter;
pub mod eval;
pub mod rbtree;
pub mod semantics;
pub mod sources;
pub mod stream;
pub mod testgen;

pub use combinators::{
    mask, repeat, slice, slice_counted, sum, zip_with, Combine, Filter, KeepRight, Map, MaskFn,
    Masked, Product, Repeat, Tallied, ZipWith,
};
pub use counter::{Counter, StepCounter, StepCounts};
pub use eval::{
    eval_aggregate, eval_nested, memo, memo_as, Aggregate, Contract, Modifiable, OfStream, ToStream,
};
pub use rbtree::{tree_stream, NodeId, OrderedTreeMap, SharedTreeStream, TreeCursor};
pub use semantics::{sem_eval, Denote, FinMap, FuelExhausted, Readout};
pub use sources::{
    dense, gallop, range, sequential, singleton, sparse_gallop, sparse_linear, ConstructionError,
    DenseStream, DenseVec, Element, Gallop, Linear, RangeKey, RangeStream, SeekMode, Sequential,
    Singleton, SparseGallop, SparseLinear, SparseStream, SparseVec,
};
pub use stream::{before_target, fold, next, ExtendedIndex, IndexedStream, LeastKey, Position, SeekTarget};

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
pub struct ReadmeDoctests;
