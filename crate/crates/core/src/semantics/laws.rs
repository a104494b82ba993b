//! Executable stream laws.
//!
//! Each checker explores states reachable from a starting stream and tests
//! one law at every explored state against a set of seek targets:
//!
//! - monotone: seeking never lowers the extended index;
//! - strictly monotone: `next` from a ready state raises it;
//! - lawful: a seek to `t` leaves the meaning unchanged at every key `j`
//!   with `(j, false) >= t`;
//! - bounded: the `next` chain from every explored state ends within a fuel
//!   budget. This is a finite surrogate; no test can establish that every
//!   infinite sequence of seeks eventually exhausts a stream.
//!
//! States come from seeded random walks, or, for streams implementing
//! [`Position`] with few reachable states, from exhaustive enumeration.

use std::collections::HashSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::Serialize;

use super::{stream_meaning, Denote, Fuel};
use crate::stream::{ExtendedIndex, IndexedStream, Position, SeekTarget};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Law {
    Monotone,
    StrictlyMonotone,
    Lawful,
    Bounded,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Law::Monotone => "monotone",
            Law::StrictlyMonotone => "strictly monotone",
            Law::Lawful => "lawful",
            Law::Bounded => "bounded",
        })
    }
}

/// The first violation found: how the failing state was reached, and what
/// went wrong there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub trace: Vec<String>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub law: Law,
    pub states: usize,
    pub checks: u64,
    pub violation: Option<Violation>,
}

impl LawReport {
    fn new(law: Law, states: usize) -> Self {
        LawReport {
            law,
            states,
            checks: 0,
            violation: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    fn fail(&mut self, trace: &[String], detail: String) {
        if self.violation.is_none() {
            self.violation = Some(Violation {
                trace: trace.to_vec(),
                detail,
            });
        }
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violation {
            None => write!(
                f,
                "{}: pass ({} states, {} checks)",
                self.law, self.states, self.checks
            ),
            Some(v) => {
                writeln!(f, "{}: FAIL: {}", self.law, v.detail)?;
                write!(f, "  reached by: start")?;
                for step in &v.trace {
                    write!(f, " -> {step}")?;
                }
                Ok(())
            }
        }
    }
}

/// Keys with a deterministic probe floor: every support key, a key between
/// each pair of neighbours where one exists, and keys below and above the
/// support.
pub trait ProbeKey: Ord + Clone + fmt::Debug {
    fn probe_keys(support: &[Self]) -> Vec<Self>;
}

macro_rules! probe_int {
    ($($t:ty),*) => {$(
        impl ProbeKey for $t {
            fn probe_keys(support: &[$t]) -> Vec<$t> {
                let mut keys: Vec<$t> = support.to_vec();
                keys.sort_unstable();
                keys.dedup();
                let mut out = keys.clone();
                for w in keys.windows(2) {
                    if w[1] - w[0] > 1 {
                        out.push(w[0] + (w[1] - w[0]) / 2);
                    }
                }
                match (keys.first(), keys.last()) {
                    (Some(&lo), Some(&hi)) => {
                        out.push(lo.saturating_sub(1));
                        out.push(hi.saturating_add(1));
                    }
                    _ => out.push(0),
                }
                out.sort_unstable();
                out.dedup();
                out
            }
        }
    )*};
}
probe_int!(i8, i16, i32, i64, isize, u8, u16, u32, u64, usize);

impl ProbeKey for String {
    fn probe_keys(support: &[String]) -> Vec<String> {
        let mut keys = support.to_vec();
        keys.sort_unstable();
        keys.dedup();
        let mut out = keys.clone();
        out.extend(keys.iter().map(|k| format!("{k}\0")));
        out.push(String::new());
        if let Some(hi) = keys.last() {
            out.push(format!("{hi}\u{10FFFF}"));
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Seek targets and the random-walk parameters used to pick states.
#[derive(Clone, Debug)]
pub struct Probes<K> {
    pub targets: Vec<SeekTarget<K>>,
    pub seed: u64,
    /// Number of random walks from the start state.
    pub walks: usize,
    /// Steps per walk.
    pub walk_len: usize,
    /// States other than the start are checked against this many randomly
    /// chosen targets; the start state is checked against all of them.
    pub targets_per_state: usize,
}

impl<K: ProbeKey> Probes<K> {
    /// The deterministic floor for `support`, both strict and not, with
    /// default walk settings.
    pub fn for_support(support: &[K], seed: u64) -> Self {
        Self::from_keys(K::probe_keys(support), seed)
    }
}

impl<K: Clone> Probes<K> {
    pub fn from_keys(keys: Vec<K>, seed: u64) -> Self {
        let targets = keys
            .into_iter()
            .flat_map(|k| [SeekTarget::at(k.clone()), SeekTarget::past(k)])
            .collect();
        Probes {
            targets,
            seed,
            walks: 4,
            walk_len: 12,
            targets_per_state: 16,
        }
    }

    pub fn with_walks(mut self, walks: usize, walk_len: usize) -> Self {
        self.walks = walks;
        self.walk_len = walk_len;
        self
    }

    pub fn with_targets_per_state(mut self, n: usize) -> Self {
        self.targets_per_state = n;
        self
    }
}

/// A reached state and the seeks that led to it.
#[derive(Clone, Debug)]
pub struct Explored<S> {
    pub state: S,
    pub trace: Vec<String>,
}

fn step_label<K: fmt::Debug>(t: &SeekTarget<K>) -> String {
    format!("seek({:?}, {})", t.key, t.strict)
}

fn next_target<S: IndexedStream>(s: &S) -> SeekTarget<S::Key> {
    SeekTarget::new(s.index(), s.ready())
}

/// The start state, if valid, plus the valid states met on seeded random walks. Each walk
/// step is `next` or a seek to a random probe target, with equal odds.
pub fn sample_states<S>(s: &S, probes: &Probes<S::Key>) -> Vec<Explored<S>>
where
    S: IndexedStream + Clone,
    S::Key: fmt::Debug,
{
    let mut rng = SplitMix64::seed_from_u64(probes.seed);
    let mut out = Vec::new();
    if !s.valid() {
        return out;
    }
    out.push(Explored {
        state: s.clone(),
        trace: Vec::new(),
    });
    for _ in 0..probes.walks {
        let mut cur = s.clone();
        let mut trace = Vec::new();
        for _ in 0..probes.walk_len {
            if !cur.valid() {
                break;
            }
            let t = if probes.targets.is_empty() || rng.random_bool(0.5) {
                next_target(&cur)
            } else {
                probes.targets[rng.random_range(0..probes.targets.len())].clone()
            };
            cur.seek_to(&t);
            trace.push(step_label(&t));
            if cur.valid() {
                out.push(Explored {
                    state: cur.clone(),
                    trace: trace.clone(),
                });
            }
        }
    }
    out
}

/// Every state reachable by `next` and by seeks to `targets`, or `None` if
/// there are more than `limit`. Invalid states are not listed.
pub fn enumerate_states<S>(s: &S, targets: &[SeekTarget<S::Key>], limit: usize) -> Option<Vec<Explored<S>>>
where
    S: IndexedStream + Clone + Position,
    S::Key: fmt::Debug,
{
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    if s.valid() {
        seen.insert(s.position());
        queue.push_back(Explored {
            state: s.clone(),
            trace: Vec::new(),
        });
    }
    while let Some(e) = queue.pop_front() {
        let successors = std::iter::once(next_target(&e.state)).chain(targets.iter().cloned());
        for t in successors {
            let mut q = e.state.clone();
            q.seek_to(&t);
            if q.valid() && seen.insert(q.position()) {
                if seen.len() > limit {
                    return None;
                }
                let mut trace = e.trace.clone();
                trace.push(step_label(&t));
                queue.push_back(Explored { state: q, trace });
            }
        }
        out.push(e);
    }
    Some(out)
}

/// Which targets to test at the `i`th state.
fn targets_for<'a, K>(
    i: usize,
    probes: &'a Probes<K>,
    rng: &mut SplitMix64,
) -> Box<dyn Iterator<Item = &'a SeekTarget<K>> + 'a> {
    if i == 0 || probes.targets.len() <= probes.targets_per_state {
        Box::new(probes.targets.iter())
    } else {
        let picks = rand::seq::index::sample(rng, probes.targets.len(), probes.targets_per_state);
        Box::new(picks.into_iter().map(move |j| &probes.targets[j]))
    }
}

pub fn monotone_on<S>(states: &[Explored<S>], probes: &Probes<S::Key>) -> LawReport
where
    S: IndexedStream + Clone,
    S::Key: fmt::Debug,
{
    let mut report = LawReport::new(Law::Monotone, states.len());
    let mut rng = SplitMix64::seed_from_u64(probes.seed ^ 1);
    for (i, e) in states.iter().enumerate() {
        let before = ExtendedIndex::Finite(e.state.index());
        let own = next_target(&e.state);
        for t in targets_for(i, probes, &mut rng).chain(std::iter::once(&own)) {
            let mut q = e.state.clone();
            q.seek_to(t);
            report.checks += 1;
            let after = q.extended_index();
            if after < before {
                report.fail(
                    &e.trace,
                    format!("{} from index {before} lowered it to {after}", step_label(t)),
                );
                return report;
            }
        }
    }
    report
}

pub fn strict_mono_on<S>(states: &[Explored<S>]) -> LawReport
where
    S: IndexedStream + Clone,
    S::Key: fmt::Debug,
{
    let mut report = LawReport::new(Law::StrictlyMonotone, states.len());
    for e in states {
        if !e.state.ready() {
            continue;
        }
        let before = ExtendedIndex::Finite(e.state.index());
        let mut q = e.state.clone();
        q.next();
        report.checks += 1;
        let after = q.extended_index();
        if after <= before {
            report.fail(
                &e.trace,
                format!("next from ready index {before} reached {after}"),
            );
            return report;
        }
    }
    report
}

pub fn lawful_on<S>(states: &[Explored<S>], probes: &Probes<S::Key>, fuel: u64) -> LawReport
where
    S: IndexedStream + Clone,
    S::Key: fmt::Debug,
    S::Value: Denote,
{
    let mut report = LawReport::new(Law::Lawful, states.len());
    let mut rng = SplitMix64::seed_from_u64(probes.seed ^ 2);
    for (i, e) in states.iter().enumerate() {
        let whole = match stream_meaning(e.state.clone(), &mut Fuel::new(fuel)) {
            Ok(m) => m,
            Err(err) => {
                report.fail(&e.trace, format!("evaluating the state: {err}"));
                return report;
            }
        };
        for t in targets_for(i, probes, &mut rng) {
            let mut q = e.state.clone();
            q.seek_to(t);
            report.checks += 1;
            let after = match stream_meaning(q, &mut Fuel::new(fuel)) {
                Ok(m) => m,
                Err(err) => {
                    report.fail(&e.trace, format!("evaluating after {}: {err}", step_label(t)));
                    return report;
                }
            };
            let want = whole.restrict(|k| t.preserves(k));
            let got = after.restrict(|k| t.preserves(k));
            if got != want {
                report.fail(
                    &e.trace,
                    format!(
                        "{} changed the meaning at keys >= ({:?}, {}): expected {want:?}, got {got:?}",
                        step_label(t),
                        t.key,
                        t.strict
                    ),
                );
                return report;
            }
        }
    }
    report
}

pub fn bounded_on<S>(states: &[Explored<S>], fuel: u64) -> LawReport
where
    S: IndexedStream + Clone,
    S::Key: fmt::Debug,
{
    let mut report = LawReport::new(Law::Bounded, states.len());
    for e in states {
        let mut q = e.state.clone();
        let mut steps = 0u64;
        report.checks += 1;
        while q.valid() {
            if steps == fuel {
                report.fail(
                    &e.trace,
                    format!("next chain still valid after {fuel} steps"),
                );
                return report;
            }
            q.next();
            steps += 1;
        }
    }
    report
}

pub fn check_monotone<S>(s: &S, probes: &Probes<S::Key>) -> LawReport
where
    S: IndexedStream + Clone,
    S::Key: fmt::Debug,
{
    monotone_on(&sample_states(s, probes), probes)
}

pub fn check_strict_mono<S>(s: &S, probes: &Probes<S::Key>) -> LawReport
where
    S: IndexedStream + Clone,
    S::Key: fmt::Debug,
{
    strict_mono_on(&sample_states(s, probes))
}

/// `fuel` bounds each meaning evaluation.
pub fn check_lawful<S>(s: &S, probes: &Probes<S::Key>, fuel: u64) -> LawReport
where
    S: IndexedStream + Clone,
    S::Key: fmt::Debug,
    S::Value: Denote,
{
    lawful_on(&sample_states(s, probes), probes, fuel)
}

pub fn check_bounded<S>(s: &S, probes: &Probes<S::Key>, fuel: u64) -> LawReport
where
    S: IndexedStream + Clone,
    S::Key: fmt::Debug,
{
    bounded_on(&sample_states(s, probes), fuel)
}

/// All four laws over one shared set of sampled states.
pub fn check_all<S>(s: &S, probes: &Probes<S::Key>, fuel: u64) -> Vec<LawReport>
where
    S: IndexedStream + Clone,
    S::Key: fmt::Debug,
    S::Value: Denote,
{
    let states = sample_states(s, probes);
    all_on(&states, probes, fuel)
}

/// All four laws over every reachable state, when there are at most `limit`.
pub fn check_all_exhaustive<S>(s: &S, probes: &Probes<S::Key>, fuel: u64, limit: usize) -> Option<Vec<LawReport>>
where
    S: IndexedStream + Clone + Position,
    S::Key: fmt::Debug,
    S::Value: Denote,
{
    let states = enumerate_states(s, &probes.targets, limit)?;
    let every = Probes {
        targets_per_state: usize::MAX,
        ..probes.clone()
    };
    Some(all_on(&states, &every, fuel))
}

fn all_on<S>(states: &[Explored<S>], probes: &Probes<S::Key>, fuel: u64) -> Vec<LawReport>
where
    S: IndexedStream + Clone,
    S::Key: fmt::Debug,
    S::Value: Denote,
{
    vec![
        monotone_on(states, probes),
        strict_mono_on(states),
        lawful_on(states, probes, fuel),
        bounded_on(states, fuel),
    ]
}
