use std::cmp::Ordering;

use num_integer::Integer;

use crate::error::{invalid, Error, Result};
use crate::gauss::{admissible_b, gauss_magnitude_closed_form, GaussSumParams};

/// Largest admissible `ε` for a major arc.
pub const MAX_EPS: f64 = 0.01;

/// A reduced fraction `a/q` with `1 ≤ a < q`, the `t`-center of a major arc.
///
/// [`FareyFraction::origin`] gives `0/1`, the center of the arc at `t ≈ 0`,
/// which the standard decomposition excludes; arcs built on it need
/// [`ArcRules::allow_origin`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FareyFraction {
    a: u64,
    q: u64,
}

impl FareyFraction {
    pub fn new(a: u64, q: u64) -> Result<Self> {
        if q < 2 || a == 0 || a >= q {
            return Err(invalid(format!("{a}/{q} is not in the range 1 <= a < q")));
        }
        let gcd = a.gcd(&q);
        if gcd != 1 {
            return Err(Error::NotCoprime { a: a as i64, q, gcd });
        }
        Ok(Self { a, q })
    }

    pub fn origin() -> Self {
        Self { a: 0, q: 1 }
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn is_origin(&self) -> bool {
        self.q == 1
    }

    pub fn value(&self) -> f64 {
        self.a as f64 / self.q as f64
    }
}

/// Exceptions to the default arc constraints.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ArcRules {
    /// Permit `ε = 0`, the limiting arcs of width `10⁻²/N` and `10⁻²/N²`.
    pub allow_eps_zero: bool,
    /// Permit the arc centered at `t = 0/1`.
    pub allow_origin: bool,
}

/// The rectangle `I(b, q) × I(a, q)` around `(b/q, a/q)`, with
/// `I(b, q) = [b/q - 10⁻² N^(ε-1), b/q + 10⁻² N^(ε-1)]` and
/// `I(a, q) = [a/q - 10⁻² N^(ε-2), a/q + 10⁻² N^(ε-2)]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MajorArc {
    center_t: FareyFraction,
    b: u64,
    n: u64,
    eps: f64,
    half_width_x: f64,
    half_width_t: f64,
}

/// `⌊N^(1/2 - ε)⌋`, the largest denominator of a major arc.
pub fn max_denominator(n: u64, eps: f64) -> u64 {
    let bound = (n as f64).powf(0.5 - eps);
    let mut q = bound.floor() as u64;
    // Guard the floor against powf rounding at perfect powers.
    while ((q + 1) as f64).ln() <= (0.5 - eps) * (n as f64).ln() {
        q += 1;
    }
    while q > 0 && (q as f64).ln() > (0.5 - eps) * (n as f64).ln() + 1e-12 {
        q -= 1;
    }
    q
}

fn check_eps(eps: f64, rules: ArcRules) -> Result<()> {
    let ok = if rules.allow_eps_zero { (0.0..=MAX_EPS).contains(&eps) } else { eps > 0.0 && eps <= MAX_EPS };
    if ok {
        Ok(())
    } else {
        Err(invalid(format!("eps = {eps} is outside (0, {MAX_EPS}]")))
    }
}

impl MajorArc {
    pub fn new(center_t: FareyFraction, b: u64, n: u64, eps: f64) -> Result<Self> {
        Self::with_rules(center_t, b, n, eps, ArcRules::default())
    }

    pub fn with_rules(center_t: FareyFraction, b: u64, n: u64, eps: f64, rules: ArcRules) -> Result<Self> {
        check_eps(eps, rules)?;
        if n == 0 {
            return Err(invalid("N must be positive"));
        }
        if center_t.is_origin() && !rules.allow_origin {
            return Err(invalid("the arc at t = 0 requires the allow_origin rule"));
        }
        let q = center_t.q;
        if b >= q {
            return Err(invalid(format!("b = {b} is not in [0, {q})")));
        }
        if q > max_denominator(n, eps) {
            return Err(invalid(format!("q = {q} exceeds N^(1/2 - eps) for N = {n}, eps = {eps}")));
        }
        let nf = n as f64;
        Ok(Self {
            center_t,
            b,
            n,
            eps,
            half_width_x: 1e-2 * nf.powf(eps - 1.0),
            half_width_t: 1e-2 * nf.powf(eps - 2.0),
        })
    }

    pub fn center_t(&self) -> FareyFraction {
        self.center_t
    }

    pub fn a(&self) -> u64 {
        self.center_t.a
    }

    pub fn q(&self) -> u64 {
        self.center_t.q
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn half_width_x(&self) -> f64 {
        self.half_width_x
    }

    pub fn half_width_t(&self) -> f64 {
        self.half_width_t
    }

    /// `(b/q, a/q)` as doubles.
    pub fn center(&self) -> (f64, f64) {
        (self.b as f64 / self.q() as f64, self.center_t.value())
    }

    /// Whether `S(a, b, q) ≠ 0`.
    pub fn is_admissible(&self) -> bool {
        admissible_b(self.q()).admits(self.b as i64)
    }

    /// `|S(a, b, q)|` from the closed form.
    pub fn gauss_magnitude(&self) -> f64 {
        match GaussSumParams::new(self.a() as i64, self.b as i64, self.q()) {
            Ok(p) => gauss_magnitude_closed_form(&p),
            // Only the origin arc 0/1 lands here, and S(0, b, 1) = 1.
            Err(_) => 1.0,
        }
    }
}

/// All arcs with `2 ≤ q ≤ qmax`, `1 ≤ a < q` coprime to `q` and `0 ≤ b < q`,
/// ordered by `(q, a, b)`. With `admissible_only`, arcs whose Gauss sum
/// vanishes are dropped.
pub fn enumerate_major_arcs(n: u64, eps: f64, qmax: u64, admissible_only: bool) -> Result<Vec<MajorArc>> {
    enumerate_major_arcs_with(n, eps, qmax, admissible_only, ArcRules::default())
}

pub fn enumerate_major_arcs_with(
    n: u64,
    eps: f64,
    qmax: u64,
    admissible_only: bool,
    rules: ArcRules,
) -> Result<Vec<MajorArc>> {
    check_eps(eps, rules)?;
    let limit = max_denominator(n, eps);
    if qmax > limit {
        return Err(invalid(format!("qmax = {qmax} exceeds floor(N^(1/2 - eps)) = {limit}")));
    }
    let mut arcs = Vec::new();
    for q in 2..=qmax {
        let class = admissible_b(q);
        for a in (1..q).filter(|a| a.gcd(&q) == 1) {
            let center = FareyFraction { a, q };
            for b in 0..q {
                if admissible_only && !class.admits(b as i64) {
                    continue;
                }
                arcs.push(MajorArc::with_rules(center, b, n, eps, rules)?);
            }
        }
    }
    Ok(arcs)
}

/// Outcome of [`check_disjoint`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disjointness {
    pub disjoint: bool,
    /// Indices into the input of the first overlapping pair found.
    pub overlap: Option<(usize, usize)>,
}

/// Torus distance between `u/p` and `v/r` as the exact fraction
/// `numerator / (p r)`.
fn torus_gap(u: u64, p: u64, v: u64, r: u64) -> (u128, u128) {
    let den = p as u128 * r as u128;
    let diff = (u as i128 * r as i128 - v as i128 * p as i128).rem_euclid(den as i128) as u128;
    (diff.min(den - diff), den)
}

/// Whether `num / den ≤ width`, where `width` is an inexact double.
///
/// A zero gap always overlaps. Otherwise `width · den` is rounded outward;
/// a gap that is not certainly larger than it counts as an overlap, so
/// disjointness is never claimed on rounding noise.
fn within(num: u128, den: u128, width: f64) -> bool {
    if num == 0 {
        return true;
    }
    let upper = width * den as f64 * (1.0 + 4.0 * f64::EPSILON);
    num as f64 <= upper
}

fn cmp_center(x: &MajorArc, y: &MajorArc) -> Ordering {
    (x.a() as u128 * y.q() as u128).cmp(&(y.a() as u128 * x.q() as u128))
}

/// Whether the closed rectangles of `arcs` are pairwise disjoint on the
/// torus.
///
/// Arcs are swept in order of their `t`-center; only pairs whose
/// `t`-intervals meet are compared in `x`. Distances between centers are
/// exact rationals.
pub fn check_disjoint(arcs: &[MajorArc]) -> Result<Disjointness> {
    let Some(first) = arcs.first() else {
        return Ok(Disjointness { disjoint: true, overlap: None });
    };
    if arcs.iter().any(|arc| arc.n != first.n || arc.eps != first.eps) {
        return Err(invalid("all arcs must share N and eps"));
    }
    let reach_t = 2.0 * first.half_width_t;
    let reach_x = 2.0 * first.half_width_x;

    let mut order: Vec<usize> = (0..arcs.len()).collect();
    order.sort_by(|&i, &j| cmp_center(&arcs[i], &arcs[j]).then(i.cmp(&j)));

    let mut found: Option<(usize, usize)> = None;
    let len = order.len();
    for pos in 0..len {
        let i = order[pos];
        let ai = &arcs[i];
        for step in 1..len {
            let j = order[(pos + step) % len];
            let aj = &arcs[j];
            let (num, den) = torus_gap(ai.a(), ai.q(), aj.a(), aj.q());
            if !within(num, den, reach_t) {
                break;
            }
            let (num, den) = torus_gap(ai.b, ai.q(), aj.b, aj.q());
            if within(num, den, reach_x) {
                let pair = (i.min(j), i.max(j));
                if found.map_or(true, |f| pair < f) {
                    found = Some(pair);
                }
            }
        }
    }
    Ok(Disjointness { disjoint: found.is_none(), overlap: found })
}
