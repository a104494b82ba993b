//! Evaluating streams into containers.
//!
//! [`OfStream`] says how a value is added into a destination. Scalars add
//! themselves. A stream whose values evaluate into `M::Value` evaluates into
//! any [`Modifiable`] `M` by folding keyed updates, so nested streams fill
//! nested containers in place with no intermediate containers. Wrapping a
//! stream in [`Aggregate`] instead sums its evaluated values into a single
//! destination, discarding keys; this is the contraction step of a matrix
//! product.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;
use std::rc::Rc;

use crate::rbtree::{OrderedTreeMap, SharedTreeStream};
use crate::sources::{DenseStream, DenseVec, SparseGallop, SparseVec};
use crate::stream::IndexedStream;

/// A container with keyed in-place update. A missing key is first filled
/// with `Value::default()`, the additive zero.
pub trait Modifiable {
    type Key;
    type Value: Default;

    fn update<F: FnOnce(&mut Self::Value)>(&mut self, key: Self::Key, modify: F);
}

impl<K: Ord, V: Default> Modifiable for SparseVec<K, V> {
    type Key = K;
    type Value = V;

    #[inline]
    fn update<F: FnOnce(&mut V)>(&mut self, key: K, modify: F) {
        modify(self.entry_mut(key))
    }
}

impl<V: Default> Modifiable for DenseVec<V> {
    type Key = usize;
    type Value = V;

    #[inline]
    fn update<F: FnOnce(&mut V)>(&mut self, key: usize, modify: F) {
        modify(self.entry_mut(key))
    }
}

impl<V: Default> Modifiable for Vec<V> {
    type Key = usize;
    type Value = V;

    #[inline]
    fn update<F: FnOnce(&mut V)>(&mut self, key: usize, modify: F) {
        if key >= self.len() {
            self.resize_with(key + 1, V::default);
        }
        modify(&mut self[key])
    }
}

impl<K: Ord, V: Default> Modifiable for BTreeMap<K, V> {
    type Key = K;
    type Value = V;

    #[inline]
    fn update<F: FnOnce(&mut V)>(&mut self, key: K, modify: F) {
        modify(self.entry(key).or_default())
    }
}

impl<K: Hash + Eq, V: Default> Modifiable for HashMap<K, V> {
    type Key = K;
    type Value = V;

    #[inline]
    fn update<F: FnOnce(&mut V)>(&mut self, key: K, modify: F) {
        modify(self.entry(key).or_default())
    }
}

impl<K: Ord, V: Default> Modifiable for OrderedTreeMap<K, V> {
    type Key = K;
    type Value = V;

    #[inline]
    fn update<F: FnOnce(&mut V)>(&mut self, key: K, modify: F) {
        modify(self.entry_mut(key))
    }
}

/// Adds `self` into a destination of type `Dst`.
pub trait OfStream<Dst> {
    fn eval_into(self, dst: &mut Dst);
}

macro_rules! scalar_of_stream {
    ($($t:ty),*) => {$(
        impl OfStream<$t> for $t {
            #[inline(always)]
            fn eval_into(self, dst: &mut $t) {
                *dst += self;
            }
        }
    )*};
}
scalar_of_stream!(i8, i16, i32, i64, i128, isize, u8, u16, u32, u64, u128, usize, f32, f64);

impl<S, M> OfStream<M> for S
where
    S: IndexedStream,
    M: Modifiable<Key = S::Key>,
    S::Value: OfStream<M::Value>,
{
    #[inline]
    fn eval_into(self, dst: &mut M) {
        self.fold((), |(), k, v| dst.update(k, |slot| v.eval_into(slot)));
    }
}

/// A stream evaluated by summing its values into one destination.
#[derive(Clone, Debug)]
pub struct Aggregate<S>(pub S);

impl<S, D> OfStream<D> for Aggregate<S>
where
    S: IndexedStream,
    S::Value: OfStream<D>,
{
    #[inline]
    fn eval_into(self, dst: &mut D) {
        self.0.fold((), |(), _, v| v.eval_into(dst));
    }
}

/// `Aggregate` as a method, for use inside `map` closures.
pub trait Contract: IndexedStream + Sized {
    fn contract(self) -> Aggregate<Self> {
        Aggregate(self)
    }
}

impl<S: IndexedStream> Contract for S {}

/// Evaluate `s` into `sink` and return the sink.
pub fn eval_nested<S, M>(s: S, mut sink: M) -> M
where
    S: IndexedStream + OfStream<M>,
{
    s.eval_into(&mut sink);
    sink
}

/// `acc` plus the sum of the evaluated values of `s`.
pub fn eval_aggregate<S, V>(s: S, mut acc: V) -> V
where
    S: IndexedStream,
    S::Value: OfStream<V>,
{
    Aggregate(s).eval_into(&mut acc);
    acc
}

/// Materializes a bounded, possibly unordered stream into a tree map,
/// adding values at repeated keys, and streams the result. The output is
/// strictly monotone and lawful.
pub fn memo<S>(s: S) -> SharedTreeStream<S::Key, S::Value>
where
    S: IndexedStream,
    S::Value: OfStream<S::Value> + Default + Clone,
{
    memo_as(s)
}

/// [`memo`] with an explicit evaluated value type, for nested streams.
pub fn memo_as<S, V>(s: S) -> SharedTreeStream<S::Key, V>
where
    S: IndexedStream,
    S::Value: OfStream<V>,
    V: Default + Clone,
{
    let tree: OrderedTreeMap<S::Key, V> = eval_nested(s, OrderedTreeMap::new());
    SharedTreeStream::new(Rc::new(tree))
}

/// Containers that can be traversed as streams.
pub trait ToStream {
    type Stream<'a>: IndexedStream
    where
        Self: 'a;

    fn to_stream(&self) -> Self::Stream<'_>;
}

impl<K: Ord + Clone, V: Copy> ToStream for SparseVec<K, V> {
    type Stream<'a>
        = SparseGallop<'a, K, V>
    where
        Self: 'a;

    fn to_stream(&self) -> Self::Stream<'_> {
        self.gallop()
    }
}

impl<V: Copy> ToStream for DenseVec<V> {
    type Stream<'a>
        = DenseStream<'a, V>
    where
        Self: 'a;

    fn to_stream(&self) -> Self::Stream<'_> {
        self.stream()
    }
}

impl<K: Ord + Clone, V: Copy> ToStream for OrderedTreeMap<K, V> {
    type Stream<'a>
        = crate::rbtree::TreeCursor<'a, K, V>
    where
        Self: 'a;

    fn to_stream(&self) -> Self::Stream<'_> {
        self.stream()
    }
}
