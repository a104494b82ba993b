//! Stream-to-stream transformers and the intersection product.
//!
//! Each combinator is defined componentwise in terms of its inputs, so a
//! composed expression is one state machine and folds into one loop.

use std::fmt;
use std::ops::Mul;

use crate::counter::Counter;
use crate::sources::{range, RangeStream};
use crate::stream::{IndexedStream, LeastKey, Position};

/// Binary value combiner used by [`ZipWith`].
///
/// Closures `Fn(X, Y) -> O` implement it; [`Product`] and [`KeepRight`] are
/// zero-sized combiners that always inline.
pub trait Combine<X, Y> {
    type Output;
    fn combine(&self, x: X, y: Y) -> Self::Output;
}

impl<X, Y, O, F> Combine<X, Y> for F
where
    F: Fn(X, Y) -> O,
{
    type Output = O;
    #[inline(always)]
    fn combine(&self, x: X, y: Y) -> O {
        self(x, y)
    }
}

/// `x * y`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Product;

impl<X: Mul<Y>, Y> Combine<X, Y> for Product {
    type Output = X::Output;
    #[inline(always)]
    fn combine(&self, x: X, y: Y) -> X::Output {
        x * y
    }
}

/// Keeps the right-hand value; used for masks and slices.
#[derive(Clone, Copy, Debug, Default)]
pub struct KeepRight;

impl<X, Y> Combine<X, Y> for KeepRight {
    type Output = Y;
    #[inline(always)]
    fn combine(&self, _: X, y: Y) -> Y {
        y
    }
}

/// Values transformed by `f(key, value)`. Keys, validity and seeking are the
/// inner stream's.
#[derive(Clone)]
pub struct Map<S, F> {
    inner: S,
    f: F,
}

impl<S, F> Map<S, F> {
    pub fn new(inner: S, f: F) -> Self {
        Map { inner, f }
    }

    pub fn into_inner(self) -> S {
        self.inner
    }
}

impl<S: fmt::Debug, F> fmt::Debug for Map<S, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Map").field("inner", &self.inner).finish()
    }
}

impl<S, F, B> IndexedStream for Map<S, F>
where
    S: IndexedStream,
    F: Fn(S::Key, S::Value) -> B,
{
    type Key = S::Key;
    type Value = B;

    #[inline(always)]
    fn valid(&self) -> bool {
        self.inner.valid()
    }
    #[inline(always)]
    fn ready(&self) -> bool {
        self.inner.ready()
    }
    #[inline(always)]
    fn index(&self) -> S::Key {
        self.inner.index()
    }
    #[inline(always)]
    fn value(&self) -> B {
        (self.f)(self.inner.index(), self.inner.value())
    }
    #[inline(always)]
    fn seek(&mut self, key: &S::Key, strict: bool) {
        self.inner.seek(key, strict)
    }

    #[inline]
    fn fold<A, G>(self, init: A, mut g: G) -> A
    where
        G: FnMut(A, S::Key, B) -> A,
    {
        let f = self.f;
        self.inner.fold(init, move |acc, k, v| {
            let w = f(k.clone(), v);
            g(acc, k, w)
        })
    }
}

impl<S: Position, F> Position for Map<S, F> {
    type Pos = S::Pos;
    fn position(&self) -> S::Pos {
        self.inner.position()
    }
}

/// Emissions whose value fails `p` become non-ready states.
#[derive(Clone)]
pub struct Filter<S, P> {
    inner: S,
    p: P,
}

impl<S, P> Filter<S, P> {
    pub fn new(inner: S, p: P) -> Self {
        Filter { inner, p }
    }
}

impl<S: fmt::Debug, P> fmt::Debug for Filter<S, P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Filter").field("inner", &self.inner).finish()
    }
}

impl<S, P> IndexedStream for Filter<S, P>
where
    S: IndexedStream,
    P: Fn(&S::Value) -> bool,
{
    type Key = S::Key;
    type Value = S::Value;

    #[inline(always)]
    fn valid(&self) -> bool {
        self.inner.valid()
    }
    #[inline(always)]
    fn ready(&self) -> bool {
        self.inner.ready() && (self.p)(&self.inner.value())
    }
    #[inline(always)]
    fn index(&self) -> S::Key {
        self.inner.index()
    }
    #[inline(always)]
    fn value(&self) -> S::Value {
        self.inner.value()
    }
    /// A rejected emission has no readout, so a non-strict seek to its key
    /// may pass it. Without this `next` would never leave a rejected state.
    #[inline(always)]
    fn seek(&mut self, key: &S::Key, strict: bool) {
        let strict = strict
            || (self.inner.ready() && self.inner.index() == *key && !(self.p)(&self.inner.value()));
        self.inner.seek(key, strict)
    }

    #[inline]
    fn fold<A, G>(self, init: A, mut g: G) -> A
    where
        G: FnMut(A, S::Key, S::Value) -> A,
    {
        let p = self.p;
        self.inner
            .fold(init, move |acc, k, v| if p(&v) { g(acc, k, v) } else { acc })
    }
}

impl<S: Position, P> Position for Filter<S, P> {
    type Pos = S::Pos;
    fn position(&self) -> S::Pos {
        self.inner.position()
    }
}

/// Pointwise combination over the keys both inputs emit.
///
/// Each seek is forwarded to both sides, and the joint index is the larger of
/// the two, so whichever input is ahead drives the other forward
/// (leapfrogging). Both inputs should be strictly monotone and lawful;
/// otherwise the result is unspecified.
#[derive(Clone)]
pub struct ZipWith<A, B, F> {
    a: A,
    b: B,
    combine: F,
}

impl<A, B, F> ZipWith<A, B, F> {
    pub fn new(a: A, b: B, combine: F) -> Self {
        ZipWith { a, b, combine }
    }

    pub fn into_parts(self) -> (A, B) {
        (self.a, self.b)
    }
}

impl<A: fmt::Debug, B: fmt::Debug, F> fmt::Debug for ZipWith<A, B, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ZipWith")
            .field("a", &self.a)
            .field("b", &self.b)
            .finish()
    }
}

impl<A, B, F> IndexedStream for ZipWith<A, B, F>
where
    A: IndexedStream,
    B: IndexedStream<Key = A::Key>,
    F: Combine<A::Value, B::Value>,
{
    type Key = A::Key;
    type Value = F::Output;

    #[inline(always)]
    fn valid(&self) -> bool {
        self.a.valid() && self.b.valid()
    }
    #[inline(always)]
    fn ready(&self) -> bool {
        self.a.ready() && self.b.ready() && self.a.index() == self.b.index()
    }
    #[inline(always)]
    fn index(&self) -> A::Key {
        let (ia, ib) = (self.a.index(), self.b.index());
        if ia < ib {
            ib
        } else {
            ia
        }
    }
    #[inline(always)]
    fn value(&self) -> F::Output {
        self.combine.combine(self.a.value(), self.b.value())
    }
    #[inline(always)]
    fn seek(&mut self, key: &A::Key, strict: bool) {
        self.a.seek(key, strict);
        self.b.seek(key, strict);
    }
}

impl<A: Position, B: Position, F> Position for ZipWith<A, B, F> {
    type Pos = (A::Pos, B::Pos);
    fn position(&self) -> Self::Pos {
        (self.a.position(), self.b.position())
    }
}

/// The constant function `k ↦ v`, meant to be joined with a bounded partner.
///
/// Its notional current key starts at the least key and follows seek targets,
/// so its index never exceeds a partner's. After a strict seek past `k` it
/// sits just above `k` and is not ready there. Folding a bare `Repeat` never
/// terminates.
#[derive(Clone, Debug)]
pub struct Repeat<K, V> {
    value: V,
    key: K,
    past: bool,
}

impl<K: LeastKey, V> Repeat<K, V> {
    pub fn new(value: V) -> Self {
        Repeat {
            value,
            key: K::least(),
            past: false,
        }
    }
}

/// `repeat(v)`: the constant stream.
pub fn repeat<K: LeastKey, V: Clone>(value: V) -> Repeat<K, V> {
    Repeat::new(value)
}

impl<K: LeastKey, V: Clone> IndexedStream for Repeat<K, V> {
    type Key = K;
    type Value = V;

    #[inline(always)]
    fn valid(&self) -> bool {
        true
    }
    #[inline(always)]
    fn ready(&self) -> bool {
        !self.past
    }
    #[inline(always)]
    fn index(&self) -> K {
        self.key.clone()
    }
    #[inline(always)]
    fn value(&self) -> V {
        self.value.clone()
    }
    #[inline(always)]
    fn seek(&mut self, key: &K, strict: bool) {
        if *key > self.key || (*key == self.key && strict && !self.past) {
            self.key = key.clone();
            self.past = strict;
        }
    }
}

impl<K, V> Position for Repeat<K, V>
where
    K: Clone + Eq + std::hash::Hash + fmt::Debug,
{
    type Pos = (K, bool);
    fn position(&self) -> (K, bool) {
        (self.key.clone(), self.past)
    }
}

/// A predicate over keys, standing for the set `{k | p(k)}`.
///
/// A mask has no keys of its own to enumerate, so it is not an
/// [`IndexedStream`]; it only restricts a concrete partner via
/// [`MaskFn::join`].
#[derive(Clone, Copy)]
pub struct MaskFn<P>(P);

pub fn mask<P>(p: P) -> MaskFn<P> {
    MaskFn(p)
}

impl<P> MaskFn<P> {
    pub fn contains<K>(&self, key: &K) -> bool
    where
        P: Fn(&K) -> bool,
    {
        (self.0)(key)
    }

    /// Restrict `partner` to keys in the mask, keeping the partner's values.
    pub fn join<S>(self, partner: S) -> Masked<S, P>
    where
        S: IndexedStream,
        P: Fn(&S::Key) -> bool,
    {
        Masked {
            inner: partner,
            p: self.0,
        }
    }
}

/// A partner stream restricted by a [`MaskFn`]. The predicate is evaluated
/// only at the partner's ready states.
#[derive(Clone)]
pub struct Masked<S, P> {
    inner: S,
    p: P,
}

impl<S: fmt::Debug, P> fmt::Debug for Masked<S, P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Masked").field("inner", &self.inner).finish()
    }
}

impl<S, P> IndexedStream for Masked<S, P>
where
    S: IndexedStream,
    P: Fn(&S::Key) -> bool,
{
    type Key = S::Key;
    type Value = S::Value;

    #[inline(always)]
    fn valid(&self) -> bool {
        self.inner.valid()
    }
    #[inline(always)]
    fn ready(&self) -> bool {
        self.inner.ready() && (self.p)(&self.inner.index())
    }
    #[inline(always)]
    fn index(&self) -> S::Key {
        self.inner.index()
    }
    #[inline(always)]
    fn value(&self) -> S::Value {
        self.inner.value()
    }
    /// As for [`Filter`], a non-strict seek may pass a masked-out key.
    #[inline(always)]
    fn seek(&mut self, key: &S::Key, strict: bool) {
        let strict = strict
            || (self.inner.ready() && self.inner.index() == *key && !(self.p)(key));
        self.inner.seek(key, strict)
    }

    #[inline]
    fn fold<A, G>(self, init: A, mut g: G) -> A
    where
        G: FnMut(A, S::Key, S::Value) -> A,
    {
        let p = self.p;
        self.inner
            .fold(init, move |acc, k, v| if p(&k) { g(acc, k, v) } else { acc })
    }
}

impl<S: Position, P> Position for Masked<S, P> {
    type Pos = S::Pos;
    fn position(&self) -> S::Pos {
        self.inner.position()
    }
}

/// Pass-through that counts emissions read at this level.
///
/// Wrap the outermost stream of a fold to count exactly one emission per
/// ready state.
#[derive(Clone, Debug)]
pub struct Tallied<S, C> {
    inner: S,
    counter: C,
}

impl<S, C> Tallied<S, C> {
    pub fn new(inner: S, counter: C) -> Self {
        Tallied { inner, counter }
    }
}

impl<S: IndexedStream, C: Counter> IndexedStream for Tallied<S, C> {
    type Key = S::Key;
    type Value = S::Value;

    #[inline(always)]
    fn valid(&self) -> bool {
        self.inner.valid()
    }
    #[inline(always)]
    fn ready(&self) -> bool {
        self.inner.ready()
    }
    #[inline(always)]
    fn index(&self) -> S::Key {
        self.inner.index()
    }
    #[inline(always)]
    fn value(&self) -> S::Value {
        self.counter.emit();
        self.inner.value()
    }
    #[inline(always)]
    fn seek(&mut self, key: &S::Key, strict: bool) {
        self.inner.seek(key, strict)
    }
}

/// `zip_with(combine, a, b)` as a free function.
pub fn zip_with<A, B, F, O>(combine: F, a: A, b: B) -> ZipWith<A, B, F>
where
    A: IndexedStream,
    B: IndexedStream<Key = A::Key>,
    F: Fn(A::Value, B::Value) -> O,
{
    ZipWith::new(a, b, combine)
}

/// Sum of all values of a bounded stream.
pub fn sum<S>(s: S) -> S::Value
where
    S: IndexedStream,
    S::Value: num_traits::Zero,
{
    s.sum()
}

/// The half-open slice `[i, j)` of a natural-number-keyed stream, expressed
/// as a join with a range mask. Enumerating it costs `j - i` range steps plus
/// whatever `arr` needs to reach `i`.
pub fn slice<S>(arr: S, i: usize, j: usize) -> ZipWith<RangeStream<usize>, S, KeepRight>
where
    S: IndexedStream<Key = usize>,
{
    ZipWith::new(range(i, j), arr, KeepRight)
}

/// [`slice`] with the range mask reporting to `counter`.
pub fn slice_counted<S, C>(
    arr: S,
    i: usize,
    j: usize,
    counter: C,
) -> ZipWith<RangeStream<usize, C>, S, KeepRight>
where
    S: IndexedStream<Key = usize>,
    C: Counter,
{
    ZipWith::new(RangeStream::with_counter(i, j, counter), arr, KeepRight)
}
