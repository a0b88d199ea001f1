//! PSL(2,Z) combinatorics: enumeration of the coset families behind the
//! Eisenstein series and the boundary-atom measure, certified truncation
//! tails for both, and reduction to the standard fundamental domain
//! `{ |z| >= 1, |Re z| <= 1/2 }`.

use crate::error::{Error, Result};
use crate::hyperbolic::{HPoint, Mobius};
use crate::specfun::lgamma_real;
use std::f64::consts::PI;

/// Bottom row `(c, d)` of a coset of the stabilizer of infinity acting on
/// the left; `c >= 0`, `gcd(c, d) = 1`, and `(0, 1)` for the identity coset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BottomRow {
    pub c: i64,
    pub d: i64,
}

/// First column `(a, c)` of a coset of the stabilizer acting on the right;
/// `c >= 0`, `gcd(a, c) = 1`, and `(1, 0)` for the identity coset. The
/// boundary point of the coset is `a/c` (infinity for `c = 0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TopColumn {
    pub a: i64,
    pub c: i64,
}

/// Truncation controls for the bottom-row series.
#[derive(Clone, Copy, Debug)]
pub struct TruncationPolicy {
    /// Discard terms with `(Im gamma z)^sigma` below this value.
    pub term_floor: f64,
    /// The certified tail must come in at or below this.
    pub tail_target: f64,
    /// Hard cap on the row index `c`.
    pub c_max: i64,
}

impl TruncationPolicy {
    pub fn new(term_floor: f64, tail_target: f64, c_max: i64) -> Self {
        assert!(term_floor > 0.0 && tail_target > 0.0 && c_max > 0);
        TruncationPolicy { term_floor, tail_target, c_max }
    }
}

/// One retained row of the series: all `d` in `[d_lo, d_hi]` coprime to `c`.
/// The window is centered near `-c x`, where `|cz + d|` is smallest.
#[derive(Clone, Debug)]
pub struct RowWindow {
    pub c: i64,
    pub d_lo: i64,
    pub d_hi: i64,
    pub d_center: i64,
    /// Distinct prime factors of `c`; empty for `c <= 1`.
    primes: Vec<i64>,
}

/// Planned enumeration of the bottom-row cosets for a fixed point and
/// exponent, with a certified bound on the discarded mass of
/// `sum (Im gamma z)^sigma`.
#[derive(Clone, Debug)]
pub struct SeriesPlan {
    pub x: f64,
    pub y: f64,
    pub sigma: f64,
    /// Row 0 is the identity coset `(0, 1)` with `Im gamma z = y`.
    pub rows: Vec<RowWindow>,
    pub tail_bound: f64,
    pub term_count: usize,
}

impl SeriesPlan {
    /// Visit the retained terms of row `idx` in decreasing size: the
    /// `d`-offsets spiral outward from the window center.
    #[inline]
    pub fn for_each_in_row<F: FnMut(i64, i64, f64)>(&self, idx: usize, mut f: F) {
        let row = &self.rows[idx];
        if row.c == 0 {
            f(0, 1, self.y);
            return;
        }
        let c = row.c as f64;
        let cy2 = c * c * self.y * self.y;
        let mut emit = |d: i64| {
            for &p in &row.primes {
                if d % p == 0 {
                    return;
                }
            }
            let u = c * self.x + d as f64;
            f(row.c, d, self.y / (u * u + cy2));
        };
        if row.d_center >= row.d_lo && row.d_center <= row.d_hi {
            emit(row.d_center);
        }
        let mut off = 1i64;
        loop {
            let hi = row.d_center + off;
            let lo = row.d_center - off;
            let hi_ok = hi <= row.d_hi;
            let lo_ok = lo >= row.d_lo;
            if !hi_ok && !lo_ok {
                break;
            }
            if hi_ok {
                emit(hi);
            }
            if lo_ok {
                emit(lo);
            }
            off += 1;
        }
    }

    /// Full ordered stream `(coset, Im gamma z)`; intended for tests and
    /// small plans.
    pub fn collect_terms(&self) -> Vec<(BottomRow, f64)> {
        let mut out = Vec::with_capacity(self.term_count);
        for i in 0..self.rows.len() {
            self.for_each_in_row(i, |c, d, im| out.push((BottomRow { c, d }, im)));
        }
        out
    }
}

fn distinct_prime_factors(mut c: i64) -> Vec<i64> {
    let mut primes = Vec::new();
    let mut p = 2i64;
    while p * p <= c {
        if c % p == 0 {
            primes.push(p);
            while c % p == 0 {
                c /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if c > 1 {
        primes.push(c);
    }
    primes
}

/// Half of the full-line integral `int (1+v^2)^{-sigma} dv`, i.e.
/// `sqrt(pi) Gamma(sigma - 1/2) / (2 Gamma(sigma))`.
fn half_line_constant(sigma: f64) -> f64 {
    0.5 * (0.5 * PI.ln() + lgamma_real(sigma - 0.5) - lgamma_real(sigma)).exp()
}

/// Upper bound for `sum_{c > cap} c^{-p}` by integral comparison.
fn power_tail(cap: i64, p: f64) -> f64 {
    if cap == 0 {
        1.0 + 1.0 / (p - 1.0)
    } else {
        (cap as f64).powf(1.0 - p) / (p - 1.0)
    }
}

/// Enumerate the bottom-row cosets whose series term `(Im gamma z)^sigma`
/// stays at or above the policy floor, together with a certified upper
/// bound on everything discarded.
///
/// The identity coset `(0, 1)` comes first; rows follow in increasing `c`,
/// and within a row the offsets grow from the window center, so the stream
/// is ordered largest-terms-first per row.
pub fn enumerate_bottom(z: &HPoint, sigma: f64, policy: &TruncationPolicy) -> Result<SeriesPlan> {
    if sigma < 1.2 {
        return Err(Error::Domain(format!(
            "enumerate_bottom: sigma = {sigma} below the feasibility floor 1.2"
        )));
    }
    let (x, y) = (z.x, z.y);
    let f = policy.term_floor;
    // Window threshold: (y / Q)^sigma >= f  <=>  Q <= W.
    let w = y * f.powf(-1.0 / sigma);
    let c_open = (w.sqrt() / y).floor() as i64; // rows with a nonempty window
    let c_used = c_open.min(policy.c_max);

    let b_half = half_line_constant(sigma);
    let mut tail = 0.0;
    let mut rows = Vec::with_capacity(c_used as usize + 1);
    rows.push(RowWindow { c: 0, d_lo: 1, d_hi: 1, d_center: 1, primes: Vec::new() });
    let mut term_count = 1usize;

    for c in 1..=c_used {
        let cf = c as f64;
        let a = cf * y;
        let l = (w - a * a).max(0.0).sqrt();
        let center = -cf * x;
        let d_lo = (center - l).ceil() as i64;
        let d_hi = (center + l).floor() as i64;
        // Window remainder: at most f for each edge plus the one-sided
        // integral past it, on both sides.
        let integral = if l > 0.0 {
            (y.powf(sigma) * l.powf(1.0 - 2.0 * sigma) / (2.0 * sigma - 1.0))
                .min(y.powf(sigma) * a.powf(1.0 - 2.0 * sigma) * b_half)
        } else {
            y.powf(sigma) * a.powf(1.0 - 2.0 * sigma) * b_half
        };
        tail += 2.0 * f + 2.0 * integral;
        if d_lo > d_hi {
            continue;
        }
        let primes = distinct_prime_factors(c);
        term_count += (d_hi - d_lo + 1) as usize;
        rows.push(RowWindow { c, d_lo, d_hi, d_center: center.round() as i64, primes });
    }

    // Rows beyond c_used, bounded by peak term plus full-line integral.
    tail += y.powf(-sigma) * power_tail(c_used, 2.0 * sigma)
        + 2.0 * b_half * y.powf(1.0 - sigma) * power_tail(c_used, 2.0 * sigma - 1.0);

    if tail > policy.tail_target {
        return Err(Error::Tolerance { requested: policy.tail_target, achieved: tail });
    }
    Ok(SeriesPlan { x, y, sigma, rows, tail_bound: tail, term_count })
}

/// A boundary atom `a/c` with its weight `(a^2 + c^2)^{-exponent}`.
#[derive(Clone, Copy, Debug)]
pub struct TopAtom {
    pub col: TopColumn,
    pub weight: f64,
}

/// Atom stream of the boundary measure with a certified bound on the total
/// discarded weight.
#[derive(Clone, Debug)]
pub struct TopEnumeration {
    pub atoms: Vec<TopAtom>,
    pub tail_bound: f64,
}

/// Unit-square covering bound for the lattice sum over `|v| >= radius` of
/// `|v|^{-2p}`; valid for `radius > 2 sqrt(2)`.
fn top_tail(radius: f64, p: f64) -> f64 {
    let s = radius - 2.0 * std::f64::consts::SQRT_2;
    assert!(s > 0.0);
    2.0 * PI
        * (s.powf(2.0 - 2.0 * p) / (2.0 * p - 2.0)
            + std::f64::consts::SQRT_2 * s.powf(1.0 - 2.0 * p) / (2.0 * p - 1.0))
}

/// Enumerate the boundary atoms `a/c` (plus the atom at infinity, first,
/// with weight one) out to a norm keeping the certified discarded weight
/// at or below `eps`.
pub fn enumerate_top(exponent: f64, eps: f64) -> Result<TopEnumeration> {
    if exponent < 2.0 {
        return Err(Error::Domain(format!(
            "enumerate_top: exponent = {exponent} below 2 (needs nu >= 1/2)"
        )));
    }
    assert!(eps > 0.0);
    let mut radius = 2.0 * std::f64::consts::SQRT_2 + 1.0;
    while top_tail(radius, exponent) > eps {
        radius *= 1.25;
        if radius > 1e9 {
            return Err(Error::Infeasible(format!("enumerate_top: radius {radius} for eps {eps}")));
        }
    }
    let tail_bound = top_tail(radius, exponent);
    let norm_cap = (radius * radius).floor() as i64;

    let mut finite: Vec<(i64, i64, i64)> = Vec::new(); // (norm, a, c)
    let c_cap = radius.floor() as i64;
    for c in 1..=c_cap {
        let a_cap = (((norm_cap - c * c).max(0)) as f64).sqrt().floor() as i64;
        for a in -a_cap..=a_cap {
            if gcd(a.unsigned_abs(), c.unsigned_abs()) == 1 {
                let n = a * a + c * c;
                if n <= norm_cap {
                    finite.push((n, a, c));
                }
            }
        }
    }
    finite.sort_unstable();
    let mut atoms = Vec::with_capacity(finite.len() + 1);
    atoms.push(TopAtom { col: TopColumn { a: 1, c: 0 }, weight: 1.0 });
    for (n, a, c) in finite {
        atoms.push(TopAtom { col: TopColumn { a, c }, weight: (n as f64).powf(-exponent) });
    }
    Ok(TopEnumeration { atoms, tail_bound })
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Iteration cap for the reduction loop; exceeding it means corrupted input.
const REDUCE_CAP: usize = 10_000;

/// Reduce `z` to the standard fundamental domain; returns the reduced point
/// and the integral matrix realizing it, `z_red = M(z)`.
pub fn reduce_to_f(z: &HPoint) -> (HPoint, Mobius) {
    let mut m = Mobius::IDENTITY;
    let mut w = *z;
    for _ in 0..REDUCE_CAP {
        let n = w.x.round();
        if n != 0.0 {
            m = Mobius::translation(-n) * m;
            w = HPoint::new(w.x - n, w.y);
        }
        if w.x * w.x + w.y * w.y < 1.0 - 1e-15 {
            m = Mobius::inversion() * m;
            w = Mobius::inversion().apply(w);
        } else {
            let z_red = m.apply(*z);
            debug_assert!(z_red.x.abs() <= 0.5 + 1e-12);
            debug_assert!(z_red.x * z_red.x + z_red.y * z_red.y >= 1.0 - 1e-12);
            return (z_red, m);
        }
    }
    panic!("reduce_to_f: iteration cap exceeded; input {z:?} numerically corrupt");
}

/// Membership in the closed standard fundamental domain, up to `tol`.
pub fn in_fundamental_domain(z: &HPoint, tol: f64) -> bool {
    z.x.abs() <= 0.5 + tol && z.x * z.x + z.y * z.y >= 1.0 - tol
}
