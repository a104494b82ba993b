//! Stream adapters over concrete static data.

use std::fmt;
use std::marker::PhantomData;

use thiserror::Error;

use crate::counter::Counter;
use crate::stream::{before_target, IndexedStream, Position};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("keys are not strictly increasing at position {position}")]
    UnsortedKeys { position: usize },
    #[error("{keys} keys but {values} values")]
    LengthMismatch { keys: usize, values: usize },
}

/// How a stored value is presented by a stream over its container.
///
/// Plain `Copy` data is copied out. Containers present themselves as their
/// own streams, so a container of containers streams as a nested stream.
pub trait Element<'a> {
    type Out;
    fn element(&'a self) -> Self::Out;
}

impl<'a, T: Copy + 'a> Element<'a> for T {
    type Out = T;
    #[inline(always)]
    fn element(&'a self) -> T {
        *self
    }
}

/// Integer keys for [`RangeStream`]. `succ` saturates at the maximum, which
/// lies beyond every range's exclusive upper bound.
pub trait RangeKey: Copy + Ord {
    fn succ(self) -> Self;
    /// `self + 1`, for callers that know `self` is below some bound.
    fn inc(self) -> Self;
}

macro_rules! range_key {
    ($($t:ty),*) => {$(
        impl RangeKey for $t {
            #[inline(always)]
            fn succ(self) -> Self { self.saturating_add(1) }
            #[inline(always)]
            fn inc(self) -> Self { self + 1 }
        }
    )*};
}
range_key!(i8, i16, i32, i64, isize, u8, u16, u32, u64, usize);

/// `k ↦ k` for `k` in `[lo, hi)`.
#[derive(Clone, Debug)]
pub struct RangeStream<I, C = ()> {
    lo: I,
    hi: I,
    counter: C,
}

pub fn range<I: RangeKey>(lo: I, hi: I) -> RangeStream<I> {
    RangeStream { lo, hi, counter: () }
}

impl<I: RangeKey, C: Counter> RangeStream<I, C> {
    pub fn with_counter(lo: I, hi: I, counter: C) -> Self {
        RangeStream { lo, hi, counter }
    }
}

impl<I: RangeKey, C: Counter> IndexedStream for RangeStream<I, C> {
    type Key = I;
    type Value = I;

    #[inline(always)]
    fn valid(&self) -> bool {
        self.lo < self.hi
    }
    #[inline(always)]
    fn ready(&self) -> bool {
        debug_assert!(self.valid());
        true
    }
    #[inline(always)]
    fn index(&self) -> I {
        debug_assert!(self.valid());
        self.lo
    }
    #[inline(always)]
    fn value(&self) -> I {
        debug_assert!(self.valid());
        self.lo
    }
    #[inline(always)]
    fn seek(&mut self, key: &I, strict: bool) {
        debug_assert!(self.valid());
        self.counter.seek();
        let target = if strict { key.succ() } else { *key };
        if target > self.lo {
            self.lo = target;
        }
    }

    #[inline]
    fn fold<B, F>(self, init: B, mut f: F) -> B
    where
        F: FnMut(B, I, I) -> B,
    {
        let mut acc = init;
        let mut i = self.lo;
        while i < self.hi {
            self.counter.seek();
            acc = f(acc, i, i);
            i = i.inc();
        }
        acc
    }
}

impl<I: RangeKey + Eq + std::hash::Hash + fmt::Debug, C> Position for RangeStream<I, C> {
    type Pos = I;
    fn position(&self) -> I {
        self.lo
    }
}

/// Seek strategy marker for [`SparseStream`].
pub trait SeekMode: Clone + Copy + fmt::Debug + Default {
    /// Least position `p >= from` whose key is not `below`, or `keys.len()`.
    fn advance<K, C: Counter>(keys: &[K], from: usize, below: impl Fn(&K) -> bool, c: &C) -> usize;
}

/// Moves at most one position per seek.
#[derive(Clone, Copy, Debug, Default)]
pub struct Linear;

/// Doubling search from the cursor, then binary search in the bracket.
#[derive(Clone, Copy, Debug, Default)]
pub struct Gallop;

impl SeekMode for Linear {
    #[inline(always)]
    fn advance<K, C: Counter>(keys: &[K], from: usize, below: impl Fn(&K) -> bool, c: &C) -> usize {
        c.probe();
        if below(&keys[from]) {
            from + 1
        } else {
            from
        }
    }
}

impl SeekMode for Gallop {
    #[inline]
    fn advance<K, C: Counter>(keys: &[K], from: usize, below: impl Fn(&K) -> bool, c: &C) -> usize {
        gallop(keys, from, below, c)
    }
}

/// Least position `p >= from` with `!below(keys[p])`, or `keys.len()`.
///
/// `below` must be downward closed over the sorted keys. Strides start at 1
/// from `from` and double; the bracket found is then binary searched.
#[inline]
pub fn gallop<K, C: Counter>(keys: &[K], from: usize, below: impl Fn(&K) -> bool, c: &C) -> usize {
    let n = keys.len();
    debug_assert!(from < n);
    c.probe();
    if !below(&keys[from]) {
        return from;
    }
    // below(keys[lo]) holds; the answer lies in (lo, hi].
    let mut lo = from;
    let mut step = 1;
    let mut hi;
    loop {
        let probe = lo + step;
        if probe >= n {
            hi = n;
            break;
        }
        c.probe();
        if below(&keys[probe]) {
            lo = probe;
            step *= 2;
        } else {
            hi = probe;
            break;
        }
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        c.probe();
        if below(&keys[mid]) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

/// A stream over parallel sorted key and value slices.
pub struct SparseStream<'a, K, V, M, C = ()> {
    keys: &'a [K],
    values: &'a [V],
    pos: usize,
    counter: C,
    mode: PhantomData<M>,
}

pub type SparseLinear<'a, K, V, C = ()> = SparseStream<'a, K, V, Linear, C>;
pub type SparseGallop<'a, K, V, C = ()> = SparseStream<'a, K, V, Gallop, C>;

impl<K, V, M, C: Clone> Clone for SparseStream<'_, K, V, M, C> {
    fn clone(&self) -> Self {
        SparseStream {
            keys: self.keys,
            values: self.values,
            pos: self.pos,
            counter: self.counter.clone(),
            mode: PhantomData,
        }
    }
}

impl<K, V, M, C> fmt::Debug for SparseStream<'_, K, V, M, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SparseStream")
            .field("pos", &self.pos)
            .field("len", &self.keys.len())
            .finish()
    }
}

fn validate<K: Ord>(keys: &[K], values: usize) -> Result<(), ConstructionError> {
    if keys.len() != values {
        return Err(ConstructionError::LengthMismatch {
            keys: keys.len(),
            values,
        });
    }
    if let Some(p) = keys.windows(2).position(|w| w[0] >= w[1]) {
        return Err(ConstructionError::UnsortedKeys { position: p + 1 });
    }
    Ok(())
}

impl<'a, K: Ord, V, M: SeekMode> SparseStream<'a, K, V, M> {
    /// Checks that keys are strictly increasing and lengths agree.
    pub fn new(keys: &'a [K], values: &'a [V]) -> Result<Self, ConstructionError> {
        validate(keys, values.len())?;
        Ok(Self::from_sorted_unchecked(keys, values, ()))
    }
}

impl<'a, K: Ord, V, M: SeekMode, C: Counter> SparseStream<'a, K, V, M, C> {
    /// Caller guarantees strictly increasing keys and equal lengths
    /// (checked in debug builds).
    #[inline]
    pub fn from_sorted_unchecked(keys: &'a [K], values: &'a [V], counter: C) -> Self {
        debug_assert!(validate(keys, values.len()).is_ok());
        SparseStream {
            keys,
            values,
            pos: 0,
            counter,
            mode: PhantomData,
        }
    }

    pub fn cursor(&self) -> usize {
        self.pos
    }

    /// The same stream, reporting to another counter.
    pub fn counted<C2: Counter>(self, counter: C2) -> SparseStream<'a, K, V, M, C2> {
        SparseStream {
            keys: self.keys,
            values: self.values,
            pos: self.pos,
            counter,
            mode: PhantomData,
        }
    }
}

/// Sorted-array stream with one-step linear seek.
pub fn sparse_linear<'a, K: Ord, V>(
    keys: &'a [K],
    values: &'a [V],
) -> Result<SparseLinear<'a, K, V>, ConstructionError> {
    SparseStream::new(keys, values)
}

/// Sorted-array stream with galloping seek.
pub fn sparse_gallop<'a, K: Ord, V>(
    keys: &'a [K],
    values: &'a [V],
) -> Result<SparseGallop<'a, K, V>, ConstructionError> {
    SparseStream::new(keys, values)
}

impl<'a, K, V, M, C> IndexedStream for SparseStream<'a, K, V, M, C>
where
    K: Ord + Clone,
    V: Element<'a>,
    M: SeekMode,
    C: Counter,
{
    type Key = K;
    type Value = V::Out;

    #[inline(always)]
    fn valid(&self) -> bool {
        self.pos < self.keys.len()
    }
    #[inline(always)]
    fn ready(&self) -> bool {
        debug_assert!(self.valid());
        true
    }
    #[inline(always)]
    fn index(&self) -> K {
        debug_assert!(self.valid());
        self.keys[self.pos].clone()
    }
    #[inline(always)]
    fn value(&self) -> V::Out {
        debug_assert!(self.valid());
        let values: &'a [V] = self.values;
        values[self.pos].element()
    }
    #[inline(always)]
    fn seek(&mut self, key: &K, strict: bool) {
        debug_assert!(self.valid());
        self.counter.seek();
        let below = |k: &K| before_target(k, key, strict);
        self.pos = M::advance(self.keys, self.pos, below, &self.counter);
    }
}

impl<K, V, M, C> Position for SparseStream<'_, K, V, M, C> {
    type Pos = usize;
    fn position(&self) -> usize {
        self.pos
    }
}

/// Owned sorted key/value arrays: a static source and an evaluation sink.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec<K, V> {
    keys: Vec<K>,
    values: Vec<V>,
}

impl<K: Ord, V> SparseVec<K, V> {
    pub fn new(keys: Vec<K>, values: Vec<V>) -> Result<Self, ConstructionError> {
        validate(&keys, values.len())?;
        Ok(SparseVec { keys, values })
    }

    pub fn empty() -> Self {
        SparseVec {
            keys: Vec::new(),
            values: Vec::new(),
        }
    }

    /// Pairs must arrive with strictly increasing keys.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (K, V)>) -> Result<Self, ConstructionError> {
        let (keys, values): (Vec<K>, Vec<V>) = pairs.into_iter().unzip();
        Self::new(keys, values)
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn keys(&self) -> &[K] {
        &self.keys
    }

    pub fn values(&self) -> &[V] {
        &self.values
    }

    pub fn get(&self, key: &K) -> Option<&V> {
        self.keys.binary_search(key).ok().map(|i| &self.values[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &V)> {
        self.keys.iter().zip(self.values.iter())
    }

    pub fn pairs(&self) -> Vec<(K, V)>
    where
        K: Clone,
        V: Clone,
    {
        self.iter().map(|(k, v)| (k.clone(), v.clone())).collect()
    }

    pub fn linear(&self) -> SparseLinear<'_, K, V> {
        SparseStream::from_sorted_unchecked(&self.keys, &self.values, ())
    }

    pub fn gallop(&self) -> SparseGallop<'_, K, V> {
        SparseStream::from_sorted_unchecked(&self.keys, &self.values, ())
    }

    pub fn linear_counted<C: Counter>(&self, counter: C) -> SparseLinear<'_, K, V, C> {
        SparseStream::from_sorted_unchecked(&self.keys, &self.values, counter)
    }

    pub fn gallop_counted<C: Counter>(&self, counter: C) -> SparseGallop<'_, K, V, C> {
        SparseStream::from_sorted_unchecked(&self.keys, &self.values, counter)
    }

    /// Insert-or-modify, keeping keys sorted. Appending in key order is O(1).
    pub fn entry_mut(&mut self, key: K) -> &mut V
    where
        V: Default,
    {
        let i = match self.keys.last() {
            None => 0,
            Some(last) if *last < key => self.keys.len(),
            Some(last) if *last == key => return self.values.last_mut().unwrap(),
            _ => match self.keys.binary_search(&key) {
                Ok(i) => return &mut self.values[i],
                Err(i) => i,
            },
        };
        self.keys.insert(i, key);
        self.values.insert(i, V::default());
        &mut self.values[i]
    }
}

impl<'a, K: Ord + Clone + 'a, V: Element<'a> + 'a> Element<'a> for SparseVec<K, V> {
    type Out = SparseGallop<'a, K, V>;
    fn element(&'a self) -> Self::Out {
        self.gallop()
    }
}

/// `i ↦ values[i]` with constant-time seek.
pub struct DenseStream<'a, V, C = ()> {
    values: &'a [V],
    pos: usize,
    counter: C,
}

pub fn dense<V>(values: &[V]) -> DenseStream<'_, V> {
    DenseStream {
        values,
        pos: 0,
        counter: (),
    }
}

impl<'a, V, C: Counter> DenseStream<'a, V, C> {
    pub fn with_counter(values: &'a [V], counter: C) -> Self {
        DenseStream {
            values,
            pos: 0,
            counter,
        }
    }
}

impl<V, C: Clone> Clone for DenseStream<'_, V, C> {
    fn clone(&self) -> Self {
        DenseStream {
            values: self.values,
            pos: self.pos,
            counter: self.counter.clone(),
        }
    }
}

impl<V, C> fmt::Debug for DenseStream<'_, V, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DenseStream")
            .field("pos", &self.pos)
            .field("len", &self.values.len())
            .finish()
    }
}

impl<'a, V: Element<'a>, C: Counter> IndexedStream for DenseStream<'a, V, C> {
    type Key = usize;
    type Value = V::Out;

    #[inline(always)]
    fn valid(&self) -> bool {
        self.pos < self.values.len()
    }
    #[inline(always)]
    fn ready(&self) -> bool {
        debug_assert!(self.valid());
        true
    }
    #[inline(always)]
    fn index(&self) -> usize {
        debug_assert!(self.valid());
        self.pos
    }
    #[inline(always)]
    fn value(&self) -> V::Out {
        debug_assert!(self.valid());
        let values: &'a [V] = self.values;
        values[self.pos].element()
    }
    #[inline(always)]
    fn seek(&mut self, key: &usize, strict: bool) {
        debug_assert!(self.valid());
        self.counter.seek();
        let target = if strict { key.saturating_add(1) } else { *key };
        if target > self.pos {
            self.pos = target;
        }
    }

    #[inline]
    fn fold<B, F>(self, init: B, mut f: F) -> B
    where
        F: FnMut(B, usize, V::Out) -> B,
    {
        let values: &'a [V] = self.values;
        let start = self.pos.min(values.len());
        let mut acc = init;
        for (i, v) in values[start..].iter().enumerate() {
            self.counter.seek();
            acc = f(acc, start + i, v.element());
        }
        acc
    }
}

impl<V, C> Position for DenseStream<'_, V, C> {
    type Pos = usize;
    fn position(&self) -> usize {
        self.pos.min(self.values.len())
    }
}

/// Owned dense array keyed by position: a source and a sink that grows on
/// demand.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DenseVec<V> {
    values: Vec<V>,
}

impl<V> DenseVec<V> {
    pub fn new() -> Self {
        DenseVec { values: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn as_slice(&self) -> &[V] {
        &self.values
    }

    pub fn into_vec(self) -> Vec<V> {
        self.values
    }

    pub fn stream(&self) -> DenseStream<'_, V> {
        dense(&self.values)
    }

    pub fn stream_counted<C: Counter>(&self, counter: C) -> DenseStream<'_, V, C> {
        DenseStream::with_counter(&self.values, counter)
    }

    pub fn entry_mut(&mut self, key: usize) -> &mut V
    where
        V: Default,
    {
        if key >= self.values.len() {
            self.values.resize_with(key + 1, V::default);
        }
        &mut self.values[key]
    }
}

impl<V> From<Vec<V>> for DenseVec<V> {
    fn from(values: Vec<V>) -> Self {
        DenseVec { values }
    }
}

impl<'a, V: Element<'a> + 'a> Element<'a> for DenseVec<V> {
    type Out = DenseStream<'a, V>;
    fn element(&'a self) -> Self::Out {
        self.stream()
    }
}

/// A stream with exactly one emission.
#[derive(Clone, Debug)]
pub struct Singleton<K, V> {
    key: K,
    value: V,
    done: bool,
}

pub fn singleton<K, V>(key: K, value: V) -> Singleton<K, V> {
    Singleton {
        key,
        value,
        done: false,
    }
}

impl<K: Ord + Clone, V: Clone> IndexedStream for Singleton<K, V> {
    type Key = K;
    type Value = V;

    #[inline(always)]
    fn valid(&self) -> bool {
        !self.done
    }
    #[inline(always)]
    fn ready(&self) -> bool {
        true
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
        debug_assert!(self.valid());
        if before_target(&self.key, key, strict) {
            self.done = true;
        }
    }
}

impl<K, V> Position for Singleton<K, V> {
    type Pos = bool;
    fn position(&self) -> bool {
        self.done
    }
}

/// Wraps a plain iterator of pairs as an indexed stream. `seek` calls `next`
/// on the iterator when the target is ahead of the current key. The
/// iterator's order is not checked: an unordered iterator yields an unordered
/// (non-monotone) stream, which can still be folded or passed to `memo`.
#[derive(Clone, Debug)]
pub struct Sequential<I: Iterator> {
    iter: I,
    current: Option<I::Item>,
    consumed: usize,
}

pub fn sequential<I, K, V>(iter: I) -> Sequential<I::IntoIter>
where
    I: IntoIterator<Item = (K, V)>,
{
    let mut iter = iter.into_iter();
    let current = iter.next();
    Sequential {
        iter,
        current,
        consumed: 0,
    }
}

impl<I, K, V> IndexedStream for Sequential<I>
where
    I: Iterator<Item = (K, V)>,
    K: Ord + Clone,
    V: Clone,
{
    type Key = K;
    type Value = V;

    #[inline]
    fn valid(&self) -> bool {
        self.current.is_some()
    }
    #[inline]
    fn ready(&self) -> bool {
        true
    }
    #[inline]
    fn index(&self) -> K {
        self.current.as_ref().expect("index on invalid state").0.clone()
    }
    #[inline]
    fn value(&self) -> V {
        self.current.as_ref().expect("value on invalid state").1.clone()
    }
    #[inline]
    fn seek(&mut self, key: &K, strict: bool) {
        let cur = &self.current.as_ref().expect("seek on invalid state").0;
        if before_target(cur, key, strict) {
            self.current = self.iter.next();
            self.consumed += 1;
        }
    }
}

impl<I: Iterator> Position for Sequential<I> {
    type Pos = usize;
    fn position(&self) -> usize {
        self.consumed
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::StepCounter;

    #[test]
    fn range_enumerates_half_open() {
        assert_eq!(range(0i64, 3).collect_pairs(), vec![(0, 0), (1, 1), (2, 2)]);
        assert!(range(5i64, 5).collect_pairs().is_empty());
        assert!(range(7i64, 2).collect_pairs().is_empty());
    }

    #[test]
    fn range_next_and_strict_seek() {
        let mut r = range(0i64, 3);
        r.next();
        assert_eq!(r.index(), 1);
        let mut r = range(0i64, 100);
        r.seek(&42, true);
        assert_eq!(r.index(), 43);
        r.seek(&10, true);
        assert_eq!(r.index(), 43);
    }

    #[test]
    fn range_seek_saturates_at_max() {
        let mut r = range(i64::MAX - 2, i64::MAX);
        r.seek(&i64::MAX, true);
        assert!(!r.valid());
    }

    #[test]
    fn sparse_linear_readout_and_steps() {
        let keys = [1i64, 3, 5, 8];
        let vals = [2i64, 4, 6, 9];
        let s = sparse_linear(&keys[..2], &vals[..2]).unwrap();
        assert_eq!(s.collect_pairs(), vec![(1, 2), (3, 4)]);

        let mut s = sparse_linear(&keys, &vals).unwrap();
        s.seek(&5, false);
        assert_eq!(s.index(), 3);
        s.seek(&5, false);
        assert_eq!(s.index(), 5);
        s.seek(&5, false);
        assert_eq!(s.index(), 5);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            sparse_linear(&[3i64, 1], &[0, 0]).unwrap_err(),
            ConstructionError::UnsortedKeys { position: 1 }
        );
        assert_eq!(
            sparse_gallop(&[1i64, 1], &[0, 0]).unwrap_err(),
            ConstructionError::UnsortedKeys { position: 1 }
        );
        assert_eq!(
            SparseVec::new(vec![1i64, 2], vec![0]).unwrap_err(),
            ConstructionError::LengthMismatch { keys: 2, values: 1 }
        );
    }

    #[test]
    fn gallop_to_last_of_1024_is_logarithmic() {
        let keys: Vec<u32> = (0..1024).collect();
        let vals = vec![0u8; 1024];
        let c = StepCounter::new();
        let mut s = SparseGallop::from_sorted_unchecked(&keys, &vals, &c);
        s.seek(&1023, false);
        assert_eq!(s.index(), 1023);
        assert!(c.probes() <= 2 * 10 + 2, "probes = {}", c.probes());
    }

    #[test]
    fn gallop_never_retreats() {
        let keys = [2i64, 4, 6, 8];
        let vals = [0i64; 4];
        let mut s = sparse_gallop(&keys, &vals).unwrap();
        s.seek(&6, false);
        assert_eq!(s.cursor(), 2);
        s.seek(&1, true);
        assert_eq!(s.cursor(), 2);
        s.seek(&6, true);
        assert_eq!(s.index(), 8);
        s.seek(&100, false);
        assert!(!s.valid());
    }

    #[test]
    fn gallop_matches_partition_point() {
        let keys: Vec<i64> = (0..300).map(|i| i * 7 - 50).collect();
        for from in [0usize, 1, 17, 150, 299] {
            for t in -60..2100i64 {
                for strict in [false, true] {
                    let below = |k: &i64| *k < t || (strict && *k == t);
                    let want = from + keys[from..].partition_point(|k| below(k));
                    assert_eq!(gallop(&keys, from, below, &()), want);
                }
            }
        }
    }

    #[test]
    fn dense_examples() {
        assert_eq!(dense(&[7]).collect_pairs(), vec![(0, 7)]);
        assert!(dense::<i32>(&[]).collect_pairs().is_empty());
        let big = vec![0u8; 1000];
        let c = StepCounter::new();
        let mut s = DenseStream::with_counter(&big, &c);
        s.seek(&500, false);
        assert_eq!((s.index(), c.seeks()), (500, 1));
        s.seek(&usize::MAX, true);
        assert!(!s.valid());
    }

    #[test]
    fn singleton_and_sequential() {
        assert_eq!(singleton(5i64, 7i64).collect_pairs(), vec![(5, 7)]);
        let mut s = singleton(5i64, 7i64);
        s.next();
        assert!(!s.valid());
        let q = sequential(vec![(3i64, 1i64), (1, 2), (3, 2)]);
        assert_eq!(q.collect_pairs(), vec![(3, 1), (1, 2), (3, 2)]);
    }

    #[test]
    fn sparse_vec_entry_keeps_order() {
        let mut v: SparseVec<i64, i64> = SparseVec::empty();
        for k in [5, 1, 9, 5, 3, 9] {
            *v.entry_mut(k) += 1;
        }
        assert_eq!(v.pairs(), vec![(1, 1), (3, 1), (5, 2), (9, 2)]);
    }

    #[test]
    fn nested_containers_stream_as_nested_streams() {
        let rows = SparseVec::from_pairs([
            (1i64, SparseVec::from_pairs([(10i64, 1i64), (20, 2)]).unwrap()),
            (4, SparseVec::from_pairs([(10, 3)]).unwrap()),
        ])
        .unwrap();
        let flat = rows
            .gallop()
            .map(|_, row| row.collect_pairs())
            .collect_pairs();
        assert_eq!(flat, vec![(1, vec![(10, 1), (20, 2)]), (4, vec![(10, 3)])]);
    }
}
