//! Reference semantics.
//!
//! The meaning of a stream is a finitely supported function, [`FinMap`]: the
//! sum of a singleton at every ready state along its `next` chain. Nested
//! streams mean nested maps. [`sem_eval`] computes this directly from the
//! five primitive operations, ignoring every `fold` override, so it is an
//! independent oracle for the evaluator and the fused loops.

pub mod laws;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul};

use num_traits::Zero;
use thiserror::Error;

use crate::eval::Aggregate;
use crate::rbtree::OrderedTreeMap;
use crate::sources::{DenseVec, SparseVec};
use crate::stream::IndexedStream;

/// A function from keys to values that is zero outside a finite support.
/// Explicit zeros are never stored, so equality is semantic equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinMap<K, V> {
    entries: BTreeMap<K, V>,
}

impl<K, V> Default for FinMap<K, V> {
    fn default() -> Self {
        FinMap {
            entries: BTreeMap::new(),
        }
    }
}

impl<K: fmt::Debug, V: fmt::Debug> fmt::Debug for FinMap<K, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries.iter()).finish()
    }
}

impl<K: Ord, V: Zero> FinMap<K, V> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(key: K, value: V) -> Self {
        let mut m = Self::new();
        m.add_at(key, value);
        m
    }

    /// Pairs with repeated keys are added together.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (K, V)>) -> Self {
        let mut m = Self::new();
        for (k, v) in pairs {
            m.add_at(k, v);
        }
        m
    }

    /// `self += {key ↦ value}`.
    pub fn add_at(&mut self, key: K, value: V) {
        use std::collections::btree_map::Entry;
        match self.entries.entry(key) {
            Entry::Vacant(e) => {
                if !value.is_zero() {
                    e.insert(value);
                }
            }
            Entry::Occupied(mut e) => {
                let old = std::mem::replace(e.get_mut(), V::zero());
                let sum = old + value;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn get(&self, key: &K) -> V
    where
        V: Clone,
    {
        self.entries.get(key).cloned().unwrap_or_else(V::zero)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &K> {
        self.entries.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &V)> {
        self.entries.iter()
    }

    /// The same function, zeroed outside `keep`.
    pub fn restrict(&self, keep: impl Fn(&K) -> bool) -> Self
    where
        K: Clone,
        V: Clone,
    {
        FinMap {
            entries: self
                .entries
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// `k ↦ self(k) * other(k)`.
    pub fn pointwise_mul<W, O>(&self, other: &FinMap<K, W>) -> FinMap<K, O>
    where
        K: Clone,
        V: Clone + Mul<W, Output = O>,
        W: Zero + Clone,
        O: Zero,
    {
        FinMap::from_pairs(self.entries.iter().filter_map(|(k, v)| {
            other
                .entries
                .get(k)
                .map(|w| (k.clone(), v.clone() * w.clone()))
        }))
    }

    pub fn into_pairs(self) -> Vec<(K, V)> {
        self.entries.into_iter().collect()
    }
}

impl<K: Ord, V: Zero> Add for FinMap<K, V> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for (k, v) in rhs.entries {
            self.add_at(k, v);
        }
        self
    }
}

impl<K: Ord, V: Zero> Zero for FinMap<K, V> {
    fn zero() -> Self {
        Self::new()
    }

    fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

impl<K: Ord, V: Zero> FromIterator<(K, V)> for FinMap<K, V> {
    fn from_iter<I: IntoIterator<Item = (K, V)>>(iter: I) -> Self {
        Self::from_pairs(iter)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("fuel exhausted after {0} steps")]
pub struct FuelExhausted(pub u64);

/// A step budget shared by every level of a nested evaluation.
#[derive(Debug, Clone)]
pub struct Fuel {
    left: u64,
    used: u64,
}

impl Fuel {
    pub fn new(budget: u64) -> Self {
        Fuel {
            left: budget,
            used: 0,
        }
    }

    pub fn burn(&mut self) -> Result<(), FuelExhausted> {
        if self.left == 0 {
            return Err(FuelExhausted(self.used));
        }
        self.left -= 1;
        self.used += 1;
        Ok(())
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}

/// The meaning of a stream value: scalars denote themselves, streams denote
/// maps from keys to the meanings of their values.
pub trait Denote {
    type Meaning: Zero + PartialEq + Clone + fmt::Debug;

    fn denote(self, fuel: &mut Fuel) -> Result<Self::Meaning, FuelExhausted>;
}

macro_rules! scalar_denote {
    ($($t:ty),*) => {$(
        impl Denote for $t {
            type Meaning = $t;
            #[inline]
            fn denote(self, _: &mut Fuel) -> Result<$t, FuelExhausted> {
                Ok(self)
            }
        }
    )*};
}
scalar_denote!(i8, i16, i32, i64, i128, isize, u8, u16, u32, u64, u128, usize, f32, f64);

impl<S> Denote for S
where
    S: IndexedStream,
    S::Key: fmt::Debug,
    S::Value: Denote,
{
    type Meaning = FinMap<S::Key, <S::Value as Denote>::Meaning>;

    fn denote(self, fuel: &mut Fuel) -> Result<Self::Meaning, FuelExhausted> {
        stream_meaning(self, fuel)
    }
}

/// `Σ {index ↦ meaning(value)}` over the ready states of the `next` chain.
pub fn stream_meaning<S>(
    mut s: S,
    fuel: &mut Fuel,
) -> Result<FinMap<S::Key, <S::Value as Denote>::Meaning>, FuelExhausted>
where
    S: IndexedStream,
    S::Value: Denote,
{
    let mut out = FinMap::new();
    while s.valid() {
        fuel.burn()?;
        if s.ready() {
            let v = s.value().denote(fuel)?;
            out.add_at(s.index(), v);
        }
        s.next();
    }
    Ok(out)
}

impl<S> Denote for Aggregate<S>
where
    S: IndexedStream,
    S::Value: Denote,
{
    type Meaning = <S::Value as Denote>::Meaning;

    fn denote(self, fuel: &mut Fuel) -> Result<Self::Meaning, FuelExhausted> {
        let mut s = self.0;
        let mut out = Self::Meaning::zero();
        while s.valid() {
            fuel.burn()?;
            if s.ready() {
                out = out + s.value().denote(fuel)?;
            }
            s.next();
        }
        Ok(out)
    }
}

/// The meaning of a stream, walking its `next` chain for at most `fuel`
/// states in total across all nesting levels.
pub fn sem_eval<S>(s: S, fuel: u64) -> Result<S::Meaning, FuelExhausted>
where
    S: Denote,
{
    s.denote(&mut Fuel::new(fuel))
}

/// The canonical meaning of a container.
pub trait Readout {
    type Meaning: Zero + PartialEq + Clone + fmt::Debug;

    fn readout(&self) -> Self::Meaning;
}

macro_rules! scalar_readout {
    ($($t:ty),*) => {$(
        impl Readout for $t {
            type Meaning = $t;
            #[inline]
            fn readout(&self) -> $t {
                *self
            }
        }
    )*};
}
scalar_readout!(i8, i16, i32, i64, i128, isize, u8, u16, u32, u64, u128, usize, f32, f64);

fn readout_pairs<'a, K, V>(pairs: impl Iterator<Item = (K, &'a V)>) -> FinMap<K, V::Meaning>
where
    K: Ord,
    V: Readout + 'a,
{
    FinMap::from_pairs(pairs.map(|(k, v)| (k, v.readout())))
}

impl<K: Ord + Clone + fmt::Debug, V: Readout> Readout for SparseVec<K, V> {
    type Meaning = FinMap<K, V::Meaning>;
    fn readout(&self) -> Self::Meaning {
        readout_pairs(self.iter().map(|(k, v)| (k.clone(), v)))
    }
}

impl<V: Readout> Readout for DenseVec<V> {
    type Meaning = FinMap<usize, V::Meaning>;
    fn readout(&self) -> Self::Meaning {
        readout_pairs(self.as_slice().iter().enumerate())
    }
}

impl<V: Readout> Readout for Vec<V> {
    type Meaning = FinMap<usize, V::Meaning>;
    fn readout(&self) -> Self::Meaning {
        readout_pairs(self.iter().enumerate())
    }
}

impl<K: Ord + Clone + fmt::Debug, V: Readout> Readout for BTreeMap<K, V> {
    type Meaning = FinMap<K, V::Meaning>;
    fn readout(&self) -> Self::Meaning {
        readout_pairs(self.iter().map(|(k, v)| (k.clone(), v)))
    }
}

impl<K: Ord + Clone + fmt::Debug, V: Readout, H> Readout for HashMap<K, V, H> {
    type Meaning = FinMap<K, V::Meaning>;
    fn readout(&self) -> Self::Meaning {
        readout_pairs(self.iter().map(|(k, v)| (k.clone(), v)))
    }
}

impl<K: Ord + Clone + fmt::Debug, V: Readout> Readout for OrderedTreeMap<K, V> {
    type Meaning = FinMap<K, V::Meaning>;
    fn readout(&self) -> Self::Meaning {
        readout_pairs(self.iter().map(|(k, v)| (k.clone(), v)))
    }
}

impl<K: Ord + Clone + fmt::Debug, V: Zero + PartialEq + Clone + fmt::Debug> Readout for FinMap<K, V> {
    type Meaning = FinMap<K, V>;
    fn readout(&self) -> Self {
        self.clone()
    }
}
