//! Step counters for complexity checks.
//!
//! Sources take a counter type parameter. The default `()` counter is a
//! zero-sized no-op, so uninstrumented streams compile to the same code as if
//! counting did not exist. Passing `&StepCounter` records seeks, key probes
//! (comparisons or node visits made while seeking) and emissions.

use std::cell::Cell;

use serde::Serialize;

pub trait Counter: Clone {
    fn seek(&self);
    fn probe(&self);
    fn probes(&self, n: u64);
    fn emit(&self);
}

impl Counter for () {
    #[inline(always)]
    fn seek(&self) {}
    #[inline(always)]
    fn probe(&self) {}
    #[inline(always)]
    fn probes(&self, _: u64) {}
    #[inline(always)]
    fn emit(&self) {}
}

/// Monotone tallies, reset only by [`StepCounter::reset`].
#[derive(Debug, Default)]
pub struct StepCounter {
    seeks: Cell<u64>,
    probes: Cell<u64>,
    emissions: Cell<u64>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StepCounts {
    pub seeks: u64,
    pub probes: u64,
    pub emissions: u64,
}

impl StepCounts {
    /// Seeks plus probes.
    pub fn steps(&self) -> u64 {
        self.seeks + self.probes
    }
}

impl StepCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn seeks(&self) -> u64 {
        self.seeks.get()
    }

    pub fn probes(&self) -> u64 {
        self.probes.get()
    }

    pub fn emissions(&self) -> u64 {
        self.emissions.get()
    }

    pub fn snapshot(&self) -> StepCounts {
        StepCounts {
            seeks: self.seeks(),
            probes: self.probes(),
            emissions: self.emissions(),
        }
    }

    pub fn reset(&self) {
        self.seeks.set(0);
        self.probes.set(0);
        self.emissions.set(0);
    }
}

impl Counter for &StepCounter {
    #[inline]
    fn seek(&self) {
        self.seeks.set(self.seeks.get() + 1);
    }
    #[inline]
    fn probe(&self) {
        self.probes.set(self.probes.get() + 1);
    }
    #[inline]
    fn probes(&self, n: u64) {
        self.probes.set(self.probes.get() + n);
    }
    #[inline]
    fn emit(&self) {
        self.emissions.set(self.emissions.get() + 1);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_counter_is_zero_sized() {
        assert_eq!(std::mem::size_of::<()>(), 0);
        ().seek();
        ().probes(3);
    }

    #[test]
    fn counts_accumulate_until_reset() {
        let c = StepCounter::new();
        let r = &c;
        r.seek();
        r.seek();
        r.probe();
        Counter::probes(&r, 4);
        r.emit();
        assert_eq!(
            c.snapshot(),
            StepCounts { seeks: 2, probes: 5, emissions: 1 }
        );
        assert_eq!(c.snapshot().steps(), 7);
        c.reset();
        assert_eq!(c.snapshot(), StepCounts::default());
    }
}
