//! Independent oracles and randomized suites shared by the integration tests
//! and the acceptance runner.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::Rational64;
use rand::Rng;
use std::collections::BTreeSet;
use wittsum::charsum::CyclotomicInt;
use wittsum::cli::{run, Command, JobSpec, Report, RunOptions, TermSpec};
use wittsum::config::Limits;
use wittsum::ffield::{build_field, FieldCtx, FieldElem};
use wittsum::wittring::{
    decompose, ghost_components, reassemble, universal_witt_polys, witt_arith, witt_fp_to_residue, FieldRing,
    IntegerRing, WittElem, WittLaurent, WittOp,
};

// ---------------------------------------------------------------------------
// Galois ring GR(p^m, deg) = (Z/p^m)[t]/(h), h a monic lift of an irreducible.

fn polymod_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = modinv(b[db] % p, p);
    while r.len() > db {
        let c = r[r.len() - 1] * inv % p;
        let shift = r.len() - 1 - db;
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * bi % p) % p;
        }
        r.pop();
    }
    r
}

fn modinv(a: u64, p: u64) -> u64 {
    (1..p).find(|x| x * a % p == 1).expect("unit")
}

/// Trial division by every monic polynomial of degree ≤ deg/2.
pub fn is_irreducible(h: &[u64], p: u64) -> bool {
    let deg = h.len() - 1;
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut g: Vec<u64> = (0..d).map(|i| code / p.pow(i as u32) % p).collect();
            g.push(1);
            if polymod_p(h, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// First monic irreducible of the given degree, scanning constant-term-first codes.
pub fn find_irreducible(p: u64, deg: usize) -> Vec<u64> {
    for code in 0..p.pow(deg as u32) {
        let mut h: Vec<u64> = (0..deg).map(|i| code / p.pow(i as u32) % p).collect();
        h.push(1);
        if is_irreducible(&h, p) {
            return h;
        }
    }
    unreachable!("irreducibles exist in every degree")
}

#[derive(Clone, Debug)]
pub struct GaloisRing {
    pub p: u64,
    pub pm: u64,
    pub deg: usize,
    modulus: Vec<u64>,
}

pub type GrElem = Vec<u64>;

impl GaloisRing {
    pub fn new(p: u64, m: usize, modulus: Vec<u64>) -> Self {
        let deg = modulus.len() - 1;
        GaloisRing { p, pm: p.pow(m as u32), deg, modulus }
    }

    pub fn size_of_residue_field(&self) -> u64 {
        self.p.pow(self.deg as u32)
    }

    pub fn zero(&self) -> GrElem {
        vec![0; self.deg]
    }

    pub fn one(&self) -> GrElem {
        let mut v = self.zero();
        v[0] = 1;
        v
    }

    pub fn lift(&self, digits: &[u64]) -> GrElem {
        let mut v = self.zero();
        for (i, &d) in digits.iter().enumerate() {
            v[i] = d % self.pm;
        }
        v
    }

    pub fn from_index(&self, mut idx: u64) -> GrElem {
        let mut v = self.zero();
        for c in v.iter_mut() {
            *c = idx % self.p;
            idx /= self.p;
        }
        v
    }

    pub fn add(&self, a: &GrElem, b: &GrElem) -> GrElem {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.pm).collect()
    }

    pub fn scale(&self, a: &GrElem, k: u64) -> GrElem {
        a.iter().map(|x| (x * (k % self.pm)) % self.pm).collect()
    }

    pub fn mul(&self, a: &GrElem, b: &GrElem) -> GrElem {
        let d = self.deg;
        let pm = self.pm as u128;
        let mut prod = vec![0u128; 2 * d];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u128 * y as u128) % pm;
            }
        }
        for i in (d..2 * d).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for (j, &h) in self.modulus.iter().enumerate().take(d) {
                prod[i - d + j] = (prod[i - d + j] + (pm - c) * h as u128) % pm;
            }
            prod[i] = 0;
        }
        prod[..d].iter().map(|&x| x as u64).collect()
    }

    pub fn pow(&self, a: &GrElem, mut e: u128) -> GrElem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn is_zero(&self, a: &GrElem) -> bool {
        a.iter().all(|&x| x == 0)
    }

    /// Trace of multiplication by `y` on the basis 1, t, …, t^{deg−1}.
    pub fn trace(&self, y: &GrElem) -> u64 {
        if self.deg == 1 {
            return y[0];
        }
        let mut basis = self.one();
        let mut t = self.zero();
        t[1] = 1;
        let mut tr = 0;
        for j in 0..self.deg {
            tr = (tr + self.mul(y, &basis)[j]) % self.pm;
            basis = self.mul(&basis, &t);
        }
        tr
    }
}

/// Histogram of Tr(f(x)) ∈ Z/p^m over the evaluation domain of S_k(f, J),
/// computed in the Galois ring: the Witt vector (b_0, …, b_{m−1}) of F_{q^k}
/// is Σ p^i ω(b_i^{p^{−i}}), ω the Teichmüller lift.
pub fn galois_ring_profile(job: &JobSpec, k: usize) -> Vec<u64> {
    let (p, m, n) = (job.p, job.m, job.n);
    let deg = job.a as usize * k;
    let h = find_irreducible(p, deg);
    let fq = GaloisRing::new(p, 1, h.clone());
    let gr = GaloisRing::new(p, m, h);
    let big_q = fq.size_of_residue_field();

    // F_q ↪ F_{q^k} through a root of the F_q modulus
    let root = if job.a == 1 {
        fq.one()
    } else {
        let md = job.modulus.as_ref().expect("oracle needs an explicit modulus when a > 1");
        (0..big_q)
            .map(|i| fq.from_index(i))
            .find(|x| {
                let mut acc = fq.zero();
                let mut pw = fq.one();
                for &c in md {
                    acc = fq.add(&acc, &fq.scale(&pw, c as u64));
                    pw = fq.mul(&pw, x);
                }
                fq.is_zero(&acc)
            })
            .expect("F_q embeds in F_{q^k}")
    };
    let embed = |c: &[u32]| {
        let mut acc = fq.zero();
        let mut pw = fq.one();
        for &cj in c {
            acc = fq.add(&acc, &fq.scale(&pw, cj as u64));
            pw = fq.mul(&pw, &root);
        }
        acc
    };
    let coords: Vec<Vec<(Vec<i64>, GrElem)>> =
        job.witt_coords.iter().map(|c| c.iter().map(|t| (t.u.clone(), embed(&t.c))).collect()).collect();

    let in_j: Vec<bool> = (1..=n).map(|i| job.j.contains(&i)).collect();
    let ranges: Vec<u64> = in_j.iter().map(|&b| if b { big_q } else { big_q - 1 }).collect();
    let total: u64 = ranges.iter().product();
    let mut profile = vec![0u64; gr.pm as usize];
    let frob_inv = |x: &GrElem| fq.pow(x, (big_q / p) as u128);
    let teich = |x: &GrElem| gr.pow(&gr.lift(x), (big_q as u128).pow(m as u32 - 1));
    for idx in 0..total {
        let mut rest = idx;
        let x: Vec<GrElem> = ranges
            .iter()
            .zip(&in_j)
            .map(|(&r, &j)| {
                let d = rest % r;
                rest /= r;
                fq.from_index(if j { d } else { d + 1 })
            })
            .collect();
        let xinv: Vec<Option<GrElem>> =
            x.iter().map(|xi| (!fq.is_zero(xi)).then(|| fq.pow(xi, (big_q - 2) as u128))).collect();
        let mut y = gr.zero();
        for (level, terms) in coords.iter().enumerate() {
            let mut b = fq.zero();
            'term: for (u, c) in terms {
                let mut v = c.clone();
                for (j, &e) in u.iter().enumerate() {
                    let base = match (e, &xinv[j]) {
                        (0, _) => continue,
                        (e, _) if e > 0 => x[j].clone(),
                        (_, Some(inv)) => inv.clone(),
                        (_, None) => continue 'term,
                    };
                    if fq.is_zero(&base) {
                        continue 'term;
                    }
                    v = fq.mul(&v, &fq.pow(&base, e.unsigned_abs() as u128));
                }
                b = fq.add(&b, &v);
            }
            for _ in 0..level {
                b = frob_inv(&b);
            }
            y = gr.add(&y, &gr.scale(&teich(&b), p.pow(level as u32)));
        }
        profile[gr.trace(&y) as usize] += 1;
    }
    profile
}

/// S_k from the oracle profile, with the sign of the matching convention.
pub fn oracle_sum(job: &JobSpec, k: usize, twist: u64) -> (Vec<u64>, CyclotomicInt) {
    let prof = galois_ring_profile(job, k);
    let sign: i64 = if job.j.is_empty() && job.n.is_multiple_of(2) { -1 } else { 1 };
    let v = CyclotomicInt::from_profile(job.p, job.m, &prof, twist).scale(&BigInt::from(sign));
    (prof, v)
}

pub fn ci(p: u64, m: usize, v: &[i64]) -> CyclotomicInt {
    CyclotomicInt::from_coeffs(p, m, v.iter().map(|&x| BigInt::from(x)).collect())
}

pub fn r(a: i64, b: i64) -> Rational64 {
    Rational64::new(a, b)
}

// ---------------------------------------------------------------------------
// Jobs

pub fn job_json(text: &str) -> JobSpec {
    JobSpec::parse(text).expect("valid job")
}

pub fn run_cmd(job: &JobSpec, cmd: Command) -> Report {
    run(job, cmd, &RunOptions { threads: 2, timings: false })
}

pub fn gauss(p: u64) -> JobSpec {
    job_json(&format!(r#"{{"p":{p},"a":1,"m":1,"n":1,"witt_coords":[[{{"u":[1],"c":[1]}}]]}}"#))
}

pub fn kloosterman() -> JobSpec {
    job_json(r#"{"p":3,"a":1,"m":1,"n":1,"witt_coords":[[{"u":[1],"c":[1]},{"u":[-1],"c":[1]}]]}"#)
}

pub fn order_four() -> JobSpec {
    job_json(r#"{"p":2,"a":1,"m":2,"n":1,"witt_coords":[[{"u":[1],"c":[1]}],[]]}"#)
}

pub fn degenerate() -> JobSpec {
    job_json(r#"{"p":2,"a":1,"m":2,"n":1,"witt_coords":[[{"u":[1],"c":[1]},{"u":[2],"c":[1]}],[]]}"#)
}

pub fn slice_job() -> JobSpec {
    job_json(r#"{"p":2,"a":1,"m":1,"n":1,"witt_coords":[[{"u":[1],"c":[1]}]],"J":[1]}"#)
}

fn random_coeff<R: Rng>(rng: &mut R, p: u64, a: u32) -> Vec<u32> {
    loop {
        let c: Vec<u32> = (0..a).map(|_| rng.gen_range(0..p as u32)).collect();
        if c.iter().any(|&x| x != 0) {
            return c;
        }
    }
}

/// A random job with exponents in [lo, hi]; the first coordinate is non-constant.
pub fn random_job<R: Rng>(rng: &mut R, p: u64, m: usize, n: usize, max_terms: usize, lo: i64, hi: i64) -> JobSpec {
    let mut coords = Vec::with_capacity(m);
    for level in 0..m {
        let count = if level == 0 { rng.gen_range(1..=max_terms) } else { rng.gen_range(0..=max_terms.min(2)) };
        let mut seen = BTreeSet::new();
        let mut terms = Vec::new();
        for _ in 0..count {
            let u: Vec<i64> = (0..n).map(|_| rng.gen_range(lo..=hi)).collect();
            if level == 0 && u.iter().all(|&e| e == 0) {
                continue;
            }
            if seen.insert(u.clone()) {
                terms.push(TermSpec { u, c: random_coeff(rng, p, 1) });
            }
        }
        if level == 0 && terms.is_empty() {
            let mut u = vec![0; n];
            u[rng.gen_range(0..n)] = if hi > 0 { hi } else { lo };
            terms.push(TermSpec { u, c: vec![1] });
        }
        coords.push(terms);
    }
    JobSpec {
        schema_version: 1,
        p,
        a: 1,
        m,
        n,
        modulus: None,
        witt_coords: coords,
        j: Vec::new(),
        kmax: None,
        guard: None,
        s_max: None,
        budget: None,
        tolerance: None,
        twist: None,
        dmax: None,
    }
}

// ---------------------------------------------------------------------------
// Polytope oracles (n ≤ 2), written without the library's hull code.

/// Counter-clockwise convex hull, collinear points dropped.
pub fn hull2(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Twice the area of a CCW polygon.
pub fn shoelace2(h: &[(i64, i64)]) -> i64 {
    let k = h.len();
    (0..k).map(|i| h[i].0 * h[(i + 1) % k].1 - h[(i + 1) % k].0 * h[i].1).sum()
}

/// n!·Vol(conv(points ∪ {0})) for n ∈ {1, 2}.
pub fn oracle_nvol(points: &[Vec<i64>], n: usize) -> i64 {
    match n {
        1 => {
            let xs = points.iter().map(|p| p[0]).chain([0]);
            let (lo, hi) = xs.fold((0, 0), |(lo, hi), x| (lo.min(x), hi.max(x)));
            hi - lo
        }
        2 => {
            let mut pts: Vec<(i64, i64)> = points.iter().map(|p| (p[0], p[1])).collect();
            pts.push((0, 0));
            shoelace2(&hull2(&pts))
        }
        _ => panic!("oracle covers n <= 2"),
    }
}

/// Gauge of conv(points ∪ {0}) at u: the least λ ≥ 0 with u ∈ λΔ; None if unbounded.
pub fn oracle_degree(points: &[Vec<i64>], n: usize, u: &[i64]) -> Option<Rational64> {
    match n {
        1 => {
            let xs = points.iter().map(|p| p[0]).chain([0]);
            let (lo, hi) = xs.fold((0, 0), |(lo, hi), x| (lo.min(x), hi.max(x)));
            match u[0] {
                0 => Some(r(0, 1)),
                x if x > 0 => (hi > 0).then(|| r(x, hi)),
                x => (lo < 0).then(|| r(-x, -lo)),
            }
        }
        2 => {
            let mut pts: Vec<(i64, i64)> = points.iter().map(|p| (p[0], p[1])).collect();
            pts.push((0, 0));
            let h = hull2(&pts);
            let mut best = r(0, 1);
            for i in 0..h.len() {
                let (a, b) = (h[i], h[(i + 1) % h.len()]);
                let e = (b.0 - a.0, b.1 - a.1);
                // inside ⇔ cross(e, u − λa) ≥ 0
                let cu = e.0 * u[1] - e.1 * u[0];
                let ca = -(e.0 * a.1 - e.1 * a.0);
                if ca == 0 {
                    if cu < 0 {
                        return None;
                    }
                } else {
                    best = best.max(r(-cu, ca));
                }
            }
            Some(best)
        }
        _ => panic!("oracle covers n <= 2"),
    }
}

// ---------------------------------------------------------------------------
// Witt algebra suites; each returns (cases, failures).

fn rand_big<R: Rng>(rng: &mut R) -> BigInt {
    BigInt::from(rng.gen_range(-30i64..=30))
}

pub fn ghost_homomorphism<R: Rng>(rng: &mut R, cases: usize) -> (usize, usize) {
    let mut fails = 0;
    for _ in 0..cases {
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let m = rng.gen_range(1..=3);
        let polys = universal_witt_polys(p, m, 4).unwrap();
        let x = WittElem::new((0..m).map(|_| rand_big(rng)).collect());
        let y = WittElem::new((0..m).map(|_| rand_big(rng)).collect());
        let gx = ghost_components(p, &x.coords);
        let gy = ghost_components(p, &y.coords);
        let s = witt_arith(WittOp::Add, &x, Some(&y), &IntegerRing, &polys).unwrap();
        let t = witt_arith(WittOp::Mul, &x, Some(&y), &IntegerRing, &polys).unwrap();
        let ng = witt_arith(WittOp::Neg, &x, None, &IntegerRing, &polys).unwrap();
        let ok_add = ghost_components(p, &s.coords) == gx.iter().zip(&gy).map(|(a, b)| a + b).collect::<Vec<_>>();
        let ok_mul = ghost_components(p, &t.coords) == gx.iter().zip(&gy).map(|(a, b)| a * b).collect::<Vec<_>>();
        let ok_neg = ghost_components(p, &ng.coords) == gx.iter().map(|a| -a).collect::<Vec<_>>();
        fails += usize::from(!(ok_add && ok_mul && ok_neg));
    }
    (cases, fails)
}

fn rand_field_witt<R: Rng>(rng: &mut R, ctx: &FieldCtx, m: usize) -> WittElem<FieldElem> {
    WittElem::new((0..m).map(|_| ctx.elem(rng.gen_range(0..ctx.size() as u32)).unwrap()).collect())
}

pub fn ring_laws<R: Rng>(rng: &mut R, cases: usize) -> (usize, usize) {
    let mut fails = 0;
    for _ in 0..cases {
        let p = [2u64, 3][rng.gen_range(0..2)];
        let deg = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=3);
        let ctx = build_field(p, deg, None).unwrap();
        let ring = FieldRing::new(&ctx);
        let polys = universal_witt_polys(p, m, 4).unwrap();
        let (x, y, z) = (rand_field_witt(rng, &ctx, m), rand_field_witt(rng, &ctx, m), rand_field_witt(rng, &ctx, m));
        let op = |o, a: &WittElem<FieldElem>, b: &WittElem<FieldElem>| witt_arith(o, a, Some(b), &ring, &polys).unwrap();
        let comm_add = op(WittOp::Add, &x, &y) == op(WittOp::Add, &y, &x);
        let comm_mul = op(WittOp::Mul, &x, &y) == op(WittOp::Mul, &y, &x);
        let assoc_add = op(WittOp::Add, &op(WittOp::Add, &x, &y), &z) == op(WittOp::Add, &x, &op(WittOp::Add, &y, &z));
        let assoc_mul = op(WittOp::Mul, &op(WittOp::Mul, &x, &y), &z) == op(WittOp::Mul, &x, &op(WittOp::Mul, &y, &z));
        let distrib = op(WittOp::Mul, &x, &op(WittOp::Add, &y, &z))
            == op(WittOp::Add, &op(WittOp::Mul, &x, &y), &op(WittOp::Mul, &x, &z));
        let neg = witt_arith(WittOp::Neg, &x, None, &ring, &polys).unwrap();
        let inverse = op(WittOp::Add, &x, &neg).coords.iter().all(|c| c.is_zero());
        fails += usize::from(!(comm_add && comm_mul && assoc_add && assoc_mul && distrib && inverse));
    }
    (cases, fails)
}

pub fn decomposition_round_trip<R: Rng>(rng: &mut R, cases: usize) -> (usize, usize) {
    let mut fails = 0;
    let limits = Limits::default();
    for _ in 0..cases {
        let p = [2u64, 3][rng.gen_range(0..2)];
        let m = rng.gen_range(1..=3);
        let n = rng.gen_range(1..=2);
        let job = random_job(rng, p, m, n, 3, -2, 2);
        let field = job.field(&limits).unwrap();
        let f: WittLaurent = job.witt(field).unwrap();
        let ok = match decompose(&f, &limits) {
            Ok(d) => {
                reassemble(&d, &limits).map(|w| w == f.as_witt()).unwrap_or(false)
                    && d.terms().iter().all(|t| t.level < m && !t.coeff.is_zero())
            }
            Err(_) => false,
        };
        fails += usize::from(!ok);
    }
    (cases, fails)
}

/// Every pair in W_m(F_p): the residue map is additive, multiplicative and bijective.
pub fn residue_isomorphism_exhaustive() -> (usize, usize) {
    let mut cases = 0;
    let mut fails = 0;
    for p in [2u64, 3] {
        let ctx = build_field(p, 1, None).unwrap();
        let ring = FieldRing::new(&ctx);
        for m in 1..=3usize {
            let polys = universal_witt_polys(p, m, 4).unwrap();
            let size = p.pow(m as u32);
            let all: Vec<WittElem<FieldElem>> = (0..size)
                .map(|mut code| {
                    WittElem::new(
                        (0..m)
                            .map(|_| {
                                let d = code % p;
                                code /= p;
                                ctx.from_int(d as i64)
                            })
                            .collect(),
                    )
                })
                .collect();
            let res: Vec<u64> = all.iter().map(|w| witt_fp_to_residue(w, &ctx).unwrap()).collect();
            let distinct: BTreeSet<u64> = res.iter().copied().collect();
            cases += 1;
            fails += usize::from(distinct.len() as u64 != size || res.iter().any(|&v| v >= size));
            for (i, x) in all.iter().enumerate() {
                for (j, y) in all.iter().enumerate() {
                    let s = witt_arith(WittOp::Add, x, Some(y), &ring, &polys).unwrap();
                    let t = witt_arith(WittOp::Mul, x, Some(y), &ring, &polys).unwrap();
                    let rs = witt_fp_to_residue(&s, &ctx).unwrap();
                    let rt = witt_fp_to_residue(&t, &ctx).unwrap();
                    cases += 1;
                    fails += usize::from(rs != (res[i] + res[j]) % size || rt != res[i] * res[j] % size);
                }
            }
        }
    }
    (cases, fails)
}

// ---------------------------------------------------------------------------
// Polytope suite

use wittsum::polytope::{h_moment_identity, p_delta, NewtonData};

/// Every check of the polytope suite on conv(points ∪ {0}); Err names the first failure.
pub fn polytope_checks(points: &[Vec<i64>], n: usize) -> Result<(), String> {
    let limits = Limits::default();
    let nd = NewtonData::from_points(points.to_vec(), n, &limits).map_err(|e| e.to_string())?;
    let h = p_delta(&nd).map_err(|e| e.to_string())?;
    if h.pcoeffs.iter().any(|&c| c < 0) {
        return Err(format!("negative P coefficient {:?}", h.pcoeffs));
    }
    let vol = oracle_nvol(points, n);
    if h.pcoeffs.iter().sum::<i64>() != vol || h.nvol != vol {
        return Err(format!("sum P = {:?}, nvol = {}, triangulation gives {vol}", h.pcoeffs, h.nvol));
    }
    let (lhs, rhs) = h_moment_identity(&nd, &h).map_err(|e| e.to_string())?;
    if lhs != rhs {
        return Err(format!("h-moment identity {lhs} != {rhs}"));
    }
    let d = nd.grid_denominator().map_err(|e| e.to_string())?;
    // independent lattice count on the degree grid
    let bound = (n as i64 + 1) * points.iter().flatten().map(|x| x.abs()).max().unwrap_or(1);
    let mut w = vec![0u64; h.weights.len()];
    let mut u = vec![-bound; n];
    loop {
        let od = oracle_degree(points, n, &u);
        let ld = nd.degree(&u).map_err(|e| e.to_string())?;
        if od != ld {
            return Err(format!("degree at {u:?}: library {ld:?}, oracle {od:?}"));
        }
        if let Some(g) = od {
            let k = g * d;
            if !k.is_integer() {
                return Err(format!("degree {g} at {u:?} is off the 1/{d} grid"));
            }
            if (k.to_integer() as usize) < w.len() {
                w[k.to_integer() as usize] += 1;
            }
            // positive homogeneity
            for s in 2..=3i64 {
                let su: Vec<i64> = u.iter().map(|x| x * s).collect();
                if nd.degree(&su).map_err(|e| e.to_string())? != Some(g * s) {
                    return Err(format!("gauge not homogeneous at {u:?}"));
                }
            }
        }
        let mut j = 0;
        loop {
            if j == n {
                if w != h.weights {
                    return Err(format!("W mismatch: library {:?}, oracle {w:?}", h.weights));
                }
                // faces avoiding the origin sit at degree exactly 1
                for f in nd.faces() {
                    for v in &f.vertices {
                        if nd.degree(v).map_err(|e| e.to_string())? != Some(r(1, 1)) {
                            return Err(format!("face vertex {v:?} not at degree 1"));
                        }
                    }
                }
                for fc in nd.facets().iter().filter(|f| f.offset > 0) {
                    for p in nd.points() {
                        let on = p.iter().zip(&fc.normal).map(|(a, b)| a * b).sum::<i64>() == fc.offset;
                        if on && nd.degree(p).map_err(|e| e.to_string())? != Some(r(1, 1)) {
                            return Err(format!("point {p:?} on a facet off degree 1"));
                        }
                    }
                }
                return Ok(());
            }
            u[j] += 1;
            if u[j] <= bound {
                break;
            }
            u[j] = -bound;
            j += 1;
        }
    }
}

pub fn polytope_corpus() -> Vec<(Vec<Vec<i64>>, usize)> {
    vec![
        (vec![vec![2]], 1),
        (vec![vec![-1], vec![1]], 1),
        (vec![vec![1, 0], vec![0, 1]], 2),
        (vec![vec![1, 0], vec![0, 1], vec![1, 1]], 2),
    ]
}

/// Random full-dimensional polytopes with n ≤ 2 and vertices in [−3, 3]^n.
pub fn random_polytopes<R: Rng>(rng: &mut R, count: usize) -> Vec<(Vec<Vec<i64>>, usize)> {
    let mut out = Vec::new();
    while out.len() < count {
        let n = if rng.gen_bool(0.25) { 1 } else { 2 };
        let k = rng.gen_range(n..=4);
        let pts: Vec<Vec<i64>> = (0..k).map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        if oracle_nvol(&pts, n) > 0 {
            out.push((pts, n));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Randomized non-degenerate sweep

use wittsum::lfunction::VerdictStatus;

fn plan_cost(q: u64, n: usize, d: i64) -> Option<u64> {
    let d = d.max(0) as u32;
    let k = d + d.max(2);
    q.checked_pow(k).filter(|&s| s <= 1 << 20)?;
    (1..=k).try_fold(0u64, |acc, i| acc.checked_add((q.pow(i) - 1).checked_pow(n as u32)?))
}

/// Rejection-samples jobs that are exactly non-degenerate, full-dimensional and
/// affordable within `budget` evaluations.
pub fn sweep_jobs<R: Rng>(rng: &mut R, count: usize, budget: u64) -> Vec<JobSpec> {
    let mut out: Vec<JobSpec> = Vec::new();
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        assert!(attempts < 200_000, "sweep sampling stalled");
        let p = [2u64, 3][rng.gen_range(0..2)];
        let m = rng.gen_range(1..=2);
        let n = rng.gen_range(1..=2);
        let mut job = random_job(rng, p, m, n, 3, -2, 2);
        job.budget = Some(budget);
        let rep = run(&job, Command::Nondegen, &RunOptions::default());
        let (Some(pt), Some(nd)) = (&rep.polytope, &rep.nondegen) else { continue };
        if rep.exit_code != 0 || !nd.is_nondegenerate() || !nd.is_exact() {
            continue;
        }
        if !plan_cost(p, n, pt.nvol).is_some_and(|c| c <= budget) {
            continue;
        }
        if out.iter().any(|j| j.witt_coords == job.witt_coords && j.p == job.p) {
            continue;
        }
        out.push(job);
    }
    out
}

/// Checks that must all pass on non-degenerate input.
pub const SWEEP_VERDICTS: [&str; 4] = ["polynomial_degree", "newton_above_hodge", "endpoints_match", "degree_bound"];

pub fn sweep_check(rep: &Report) -> Result<(), String> {
    if let Some(e) = &rep.error {
        return Err(e.message.clone());
    }
    for name in SWEEP_VERDICTS {
        match rep.verdicts.iter().find(|v| v.name == name) {
            Some(v) if v.status == VerdictStatus::Pass => {}
            Some(v) => return Err(format!("{name}: {:?} {}", v.status, v.detail)),
            None => return Err(format!("{name} missing")),
        }
    }
    if rep.exit_code != 0 {
        return Err(format!("exit code {}", rep.exit_code));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Galois invariance

/// Reruns `verify` under every twist s coprime to p, s < p^m, and compares the
/// Newton polygon with the untwisted one. Returns the number of twists checked.
pub fn twist_invariance(job: &JobSpec) -> Result<usize, String> {
    let np_of = |j: &JobSpec| -> Result<wittsum::polytope::PolygonChain, String> {
        let rep = run_cmd(j, Command::Verify);
        rep.verification.and_then(|v| v.np).ok_or_else(|| format!("no Newton polygon (exit {})", rep.exit_code))
    };
    let base = np_of(job)?;
    let mut checked = 0;
    for s in CyclotomicInt::galois_group(job.p, job.m) {
        let mut j = job.clone();
        j.twist = Some(s);
        let np = np_of(&j)?;
        if np != base {
            return Err(format!("twist {s}: {:?} != {:?}", np.vertices(), base.vertices()));
        }
        checked += 1;
    }
    Ok(checked)
}
