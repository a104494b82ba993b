use indexed_streams::semantics::laws::{check_all, check_all_exhaustive, LawReport, Probes};
use indexed_streams::testgen;
use indexed_streams::*;
use rand::Rng;

fn assert_pass(what: &str, reports: &[LawReport]) {
    for r in reports {
        assert!(r.passed(), "{what}: {r}");
    }
}

#[test]
fn sources_pass() {
    for case in 0..40u64 {
        let mut rng = batch::case_rng(11, case as usize);
        let a = testgen::sparse(&mut rng, 32, 100);
        let n = a.len() as u64;
        let p = Probes::for_support(a.keys(), case);
        assert_pass("linear", &check_all(&a.linear(), &p, 2 * n + 2));
        assert_pass("gallop", &check_all(&a.gallop(), &p, 2 * n + 2));

        let d = testgen::dense(&mut rng, 32);
        let dk: Vec<usize> = (0..d.len()).collect();
        let dp = Probes::for_support(&dk, case);
        assert_pass("dense", &check_all(&d.stream(), &dp, 2 * d.len() as u64 + 2));

        let t = testgen::tree(&mut rng, 64, 200);
        let tk: Vec<i64> = t.iter().map(|(k, _)| *k).collect();
        let tp = Probes::for_support(&tk, case);
        assert_pass("tree", &check_all(&t.stream(), &tp, 2 * t.len() as u64 + 2));

        let lo = rng.random_range(-5i64..20);
        let hi = lo + rng.random_range(0i64..20);
        let rk: Vec<i64> = (lo..hi).collect();
        assert_pass("range", &check_all(&range(lo, hi), &Probes::for_support(&rk, case), 2 * rk.len() as u64 + 2));

        let k = rng.random_range(0i64..10);
        assert_pass("singleton", &check_all(&singleton(k, 3i64), &Probes::for_support(&[k], case), 4));
    }
}

#[test]
fn compositions_pass() {
    for case in 0..40u64 {
        let mut rng = batch::case_rng(12, case as usize);
        let a = testgen::sparse(&mut rng, 32, 64);
        let b = testgen::sparse(&mut rng, 32, 64);
        let c = testgen::sparse(&mut rng, 32, 64);
        let mut keys = a.keys().to_vec();
        keys.extend_from_slice(b.keys());
        let p = Probes::for_support(&keys, case);
        let fuel = 4 * 64 + 4;
        assert_pass("mul", &check_all(&a.gallop().mul(b.linear()), &p, fuel));
        assert_pass(
            "map(filter(mul))",
            &check_all(&a.gallop().mul(b.gallop()).filter(|v| *v > 0).map(|k, v| k + v), &p, fuel),
        );
        assert_pass("mul(mul)", &check_all(&a.gallop().mul(b.gallop()).mul(c.gallop()), &p, fuel));
        assert_pass("mask", &check_all(&mask(|k: &i64| k % 2 == 0).join(a.gallop()), &p, fuel));
        assert_pass("repeat", &check_all(&a.gallop().mul(repeat(2i64)), &p, fuel));
        assert_pass("memo", &check_all(&memo(a.gallop().map(|_, v| v * 2)), &p, fuel));
    }
}

#[test]
fn small_streams_exhaustively() {
    for case in 0..40u64 {
        let mut rng = batch::case_rng(13, case as usize);
        let a = testgen::sparse(&mut rng, 12, 40);
        let b = testgen::sparse(&mut rng, 12, 40);
        let mut keys = a.keys().to_vec();
        keys.extend_from_slice(b.keys());
        let p = Probes::for_support(&keys, case);
        let r = check_all_exhaustive(&a.gallop(), &p, 200, 64).expect("few states");
        assert_pass("gallop", &r);
        let r = check_all_exhaustive(&a.linear().mul(b.gallop()), &p, 200, 64);
        if let Some(r) = r {
            assert_pass("mul", &r);
        }
    }
}
