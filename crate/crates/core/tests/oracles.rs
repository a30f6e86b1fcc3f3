mod support;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use support::*;
use wittsum::charsum::{exp_sum, SignConvention, SumOptions};
use wittsum::cli::JobSpec;
use wittsum::config::Limits;

fn library_sum(job: &JobSpec, k: usize, twist: u64) -> (Vec<u64>, wittsum::charsum::CyclotomicInt) {
    let limits = Limits::default();
    let f = job.witt(job.field(&limits).unwrap()).unwrap();
    let conv = if job.j.is_empty() { SignConvention::Alternating } else { SignConvention::Plain };
    let opts = SumOptions { threads: 2, twist, primitive: false, limits };
    let r = exp_sum(&f, k, &job.j, conv, &opts).unwrap();
    (r.profile, r.value)
}

fn agree(job: &JobSpec, kmax: usize) {
    for k in 1..=kmax {
        let (po, vo) = oracle_sum(job, k, 1);
        let (pl, vl) = library_sum(job, k, 1);
        assert_eq!(po, pl, "profile k={k} job={}", job.to_json());
        assert_eq!(vo, vl, "value k={k}");
    }
}

#[test]
fn gauss_sums_are_minus_one() {
    for p in [3, 5] {
        let job = gauss(p);
        for k in 1..=3 {
            let (_, v) = oracle_sum(&job, k, 1);
            assert_eq!(v, ci(p, 1, &[-1]));
        }
        agree(&job, 3);
    }
}

#[test]
fn order_four_character_values() {
    let job = order_four();
    assert_eq!(oracle_sum(&job, 1, 1).1, ci(2, 2, &[0, 1]));
    assert_eq!(oracle_sum(&job, 2, 1).1, ci(2, 2, &[-1, -2]));
    agree(&job, 5);
}

#[test]
fn kloosterman_sums() {
    let job = kloosterman();
    // x = 1 gives ζ^2, x = 2 gives ζ^4 = ζ
    assert_eq!(oracle_sum(&job, 1, 1).1, ci(3, 1, &[-1]));
    agree(&job, 4);
}

#[test]
fn degenerate_and_slice_jobs() {
    agree(&degenerate(), 6);
    agree(&slice_job(), 4);
}

#[test]
fn random_jobs_match_galois_ring_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    for (p, m, n, kmax) in [(2, 1, 1, 4), (2, 2, 1, 4), (3, 1, 1, 3), (3, 2, 1, 2), (2, 3, 1, 3), (2, 1, 2, 3), (2, 2, 2, 2), (3, 1, 2, 2)] {
        for _ in 0..3 {
            let job = random_job(&mut rng, p, m, n, 3, -2, 2);
            agree(&job, kmax);
            checked += 1;
        }
    }
    assert_eq!(checked, 24);
}

#[test]
fn twisted_sums_match() {
    let job = order_four();
    for k in 1..=3 {
        assert_eq!(oracle_sum(&job, k, 3).1, library_sum(&job, k, 3).1);
    }
}

#[test]
fn extension_coefficients_and_subsets() {
    // F_4 = F_2[t]/(t^2 + t + 1), f = t·x + y, with J = {2}
    let job = job_json(
        r#"{"p":2,"a":2,"m":2,"n":2,"modulus":[1,1,1],"witt_coords":[[{"u":[1,0],"c":[0,1]},{"u":[0,1],"c":[1]}],[{"u":[1,1],"c":[1,1]}]],"J":[2]}"#,
    );
    agree(&job, 2);
    let job = job_json(r#"{"p":3,"a":2,"m":1,"n":1,"modulus":[1,0,1],"witt_coords":[[{"u":[2],"c":[1,1]},{"u":[-1],"c":[0,2]}]]}"#);
    agree(&job, 2);
}
