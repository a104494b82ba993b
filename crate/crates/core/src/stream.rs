//! The indexed-stream contract.
//!
//! An indexed stream is a state machine over key-ordered emissions. Unlike a
//! plain iterator it exposes a lower bound on its next key ([`index`]) and can
//! be asked to skip ahead ([`seek`]). Every source and combinator in this crate
//! is its own concrete type implementing [`IndexedStream`], so a composed
//! expression monomorphizes into a single loop when it is folded.
//!
//! A stream value *is* its state: `seek` mutates it in place, and cloning a
//! stream snapshots its position. Law checkers rely on the latter.
//!
//! [`index`]: IndexedStream::index
//! [`seek`]: IndexedStream::seek

use std::cmp::Ordering;
use std::fmt;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::combinators::{Filter, Map, MaskFn, Masked, Product, ZipWith};

/// A target handed to [`IndexedStream::seek`].
///
/// `strict == false` lets the stream stop *at* `key`; `strict == true` asks it
/// to move *past* `key`. Targets are ordered lexicographically with
/// `false < true`, which is the "at least as far" relation the stream laws
/// are phrased in.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SeekTarget<K> {
    pub key: K,
    pub strict: bool,
}

impl<K> SeekTarget<K> {
    pub fn new(key: K, strict: bool) -> Self {
        SeekTarget { key, strict }
    }

    pub fn at(key: K) -> Self {
        SeekTarget { key, strict: false }
    }

    pub fn past(key: K) -> Self {
        SeekTarget { key, strict: true }
    }
}

impl<K: Ord> SeekTarget<K> {
    /// True when a seek to `self` may not change the readout at `key`,
    /// i.e. `(key, false) >= self`.
    pub fn preserves(&self, key: &K) -> bool {
        match key.cmp(&self.key) {
            Ordering::Greater => true,
            Ordering::Equal => !self.strict,
            Ordering::Less => false,
        }
    }

    /// True when a stream sitting at `key` must still move to honor `self`.
    pub fn is_ahead_of(&self, key: &K) -> bool {
        before_target(key, &self.key, self.strict)
    }
}

impl<K: Ord> PartialOrd for SeekTarget<K> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<K: Ord> Ord for SeekTarget<K> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key
            .cmp(&other.key)
            .then(self.strict.cmp(&other.strict))
    }
}

/// `k` lies before the seek target `(key, strict)`: `k < key`, or `k == key`
/// when strict. One comparison, which matters for string keys.
#[inline(always)]
pub fn before_target<K: Ord>(k: &K, key: &K, strict: bool) -> bool {
    match k.cmp(key) {
        Ordering::Less => true,
        Ordering::Equal => strict,
        Ordering::Greater => false,
    }
}

/// The index of a stream state, extended with a top element for invalid
/// (exhausted) states. Only used by law checks; `index` itself is never
/// called on an invalid state.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ExtendedIndex<K> {
    Finite(K),
    Top,
}

impl<K: fmt::Debug> fmt::Display for ExtendedIndex<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedIndex::Finite(k) => write!(f, "{k:?}"),
            ExtendedIndex::Top => f.write_str("⊤"),
        }
    }
}

/// Key types with a least element. [`Repeat`] starts there so that its index
/// never exceeds a partner's when joined.
pub trait LeastKey: Ord + Clone {
    fn least() -> Self;
}

macro_rules! least_int {
    ($($t:ty),*) => {$(
        impl LeastKey for $t {
            #[inline]
            fn least() -> Self { <$t>::MIN }
        }
    )*};
}
least_int!(i8, i16, i32, i64, i128, isize, u8, u16, u32, u64, u128, usize);

impl LeastKey for &str {
    fn least() -> Self {
        ""
    }
}

impl LeastKey for String {
    fn least() -> Self {
        String::new()
    }
}

impl LeastKey for char {
    fn least() -> Self {
        '\0'
    }
}

impl<A: LeastKey, B: LeastKey> LeastKey for (A, B) {
    fn least() -> Self {
        (A::least(), B::least())
    }
}

/// An iterator over an associative array that can skip ahead by key.
///
/// `ready`, `index` and `seek` may only be called while `valid()` holds, and
/// `value` only while additionally `ready()` holds. Implementations check
/// this with `debug_assert!`.
pub trait IndexedStream {
    type Key: Ord + Clone;
    type Value;

    /// May more output exist?
    fn valid(&self) -> bool;

    /// Does the current state carry an emission at `index()`?
    fn ready(&self) -> bool;

    /// Lower bound on the key of the next emission.
    fn index(&self) -> Self::Key;

    /// The emission at `index()`.
    fn value(&self) -> Self::Value;

    /// Advance toward `key`, or past it when `strict`. Never moves backwards.
    fn seek(&mut self, key: &Self::Key, strict: bool);

    /// `seek(index(), ready())`: make progress past the current position.
    #[inline]
    fn next(&mut self) {
        debug_assert!(self.valid(), "next on invalid stream state");
        let i = self.index();
        let r = self.ready();
        self.seek(&i, r);
    }

    #[inline]
    fn seek_to(&mut self, target: &SeekTarget<Self::Key>) {
        self.seek(&target.key, target.strict);
    }

    /// Index of the current state, with `Top` for exhausted states.
    fn extended_index(&self) -> ExtendedIndex<Self::Key> {
        if self.valid() {
            ExtendedIndex::Finite(self.index())
        } else {
            ExtendedIndex::Top
        }
    }

    /// Visit every emission in order. The stream must be bounded.
    #[inline]
    fn fold<B, F>(mut self, init: B, mut f: F) -> B
    where
        Self: Sized,
        F: FnMut(B, Self::Key, Self::Value) -> B,
    {
        let mut acc = init;
        while self.valid() {
            let i = self.index();
            if self.ready() {
                let v = self.value();
                self.seek(&i, true);
                acc = f(acc, i, v);
            } else {
                self.seek(&i, false);
            }
        }
        acc
    }

    /// Like [`fold`](Self::fold) but `f` may stop early.
    #[inline]
    fn try_fold<B, R, F>(&mut self, init: B, mut f: F) -> ControlFlow<R, B>
    where
        Self: Sized,
        F: FnMut(B, Self::Key, Self::Value) -> ControlFlow<R, B>,
    {
        let mut acc = init;
        while self.valid() {
            let i = self.index();
            if self.ready() {
                let v = self.value();
                self.seek(&i, true);
                acc = f(acc, i, v)?;
            } else {
                self.seek(&i, false);
            }
        }
        ControlFlow::Continue(acc)
    }

    /// Call `f` on every emission.
    #[inline]
    fn for_each<F>(self, mut f: F)
    where
        Self: Sized,
        F: FnMut(Self::Key, Self::Value),
    {
        self.fold((), |(), k, v| f(k, v))
    }

    /// Sum of all emitted values.
    #[inline]
    fn sum(self) -> Self::Value
    where
        Self: Sized,
        Self::Value: num_traits::Zero,
    {
        self.fold(num_traits::Zero::zero(), |acc: Self::Value, _, v| acc + v)
    }

    /// Collect emissions into `(key, value)` pairs in traversal order.
    fn collect_pairs(self) -> Vec<(Self::Key, Self::Value)>
    where
        Self: Sized,
    {
        self.fold(Vec::new(), |mut out, k, v| {
            out.push((k, v));
            out
        })
    }

    /// Number of emissions.
    fn count(self) -> usize
    where
        Self: Sized,
    {
        self.fold(0, |n, _, _| n + 1)
    }

    /// Transform every value; `f` also sees the key.
    fn map<B, F>(self, f: F) -> Map<Self, F>
    where
        Self: Sized,
        F: Fn(Self::Key, Self::Value) -> B,
    {
        Map::new(self, f)
    }

    /// Drop emissions whose value fails `p`.
    fn filter<P>(self, p: P) -> Filter<Self, P>
    where
        Self: Sized,
        P: Fn(&Self::Value) -> bool,
    {
        Filter::new(self, p)
    }

    /// Pointwise `combine` over the keys both streams emit.
    fn zip_with<B, F, O>(self, other: B, combine: F) -> ZipWith<Self, B, F>
    where
        Self: Sized,
        B: IndexedStream<Key = Self::Key>,
        F: Fn(Self::Value, B::Value) -> O,
    {
        ZipWith::new(self, other, combine)
    }

    /// Pointwise product over the intersection of supports.
    fn mul<B>(self, other: B) -> ZipWith<Self, B, Product>
    where
        Self: Sized,
        B: IndexedStream<Key = Self::Key>,
        Self::Value: std::ops::Mul<B::Value>,
    {
        ZipWith::new(self, other, Product)
    }

    /// Keep only emissions whose key satisfies the mask.
    fn masked<P>(self, mask: MaskFn<P>) -> Masked<Self, P>
    where
        Self: Sized,
        P: Fn(&Self::Key) -> bool,
    {
        mask.join(self)
    }
}

/// `next(q) = seek(q, index(q), ready(q))`, as a free function.
#[inline]
pub fn next<S: IndexedStream>(s: &mut S) {
    s.next()
}

/// `fold(f, s, init)`, as a free function.
#[inline]
pub fn fold<S, B, F>(f: F, s: S, init: B) -> B
where
    S: IndexedStream,
    F: FnMut(B, S::Key, S::Value) -> B,
{
    s.fold(init, f)
}

/// Identifies a stream's position for state-space exploration.
///
/// Two states with equal positions must behave identically under every
/// seek. Law checkers use this to enumerate reachable states exhaustively.
pub trait Position {
    type Pos: Clone + Eq + std::hash::Hash + fmt::Debug;
    fn position(&self) -> Self::Pos;
}
