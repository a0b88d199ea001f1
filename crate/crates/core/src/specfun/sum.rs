//! Compensated summation with a deterministic reduction tree.
//!
//! Every sum in this crate that feeds a certified result goes through the
//! fixed index-based tree below, so serial and parallel reductions are
//! bitwise identical for any thread count.

use num_complex::Complex64;

/// Leaf size of the reduction tree. Slices at or below this length are
/// summed sequentially with Neumaier compensation.
const LEAF: usize = 64;

/// Minimum length at which the parallel reducer forks.
const PAR_CUTOFF: usize = 8192;

/// Neumaier-compensated accumulator for `f64`.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedF64 {
    sum: f64,
    comp: f64,
}

impl CompensatedF64 {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    /// Merge another accumulator; order matters and is fixed by the tree.
    #[inline]
    pub fn merge(&mut self, other: CompensatedF64) {
        self.add(other.sum);
        self.comp += other.comp;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Componentwise compensated accumulator for `Complex64`.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedC64 {
    re: CompensatedF64,
    im: CompensatedF64,
}

impl CompensatedC64 {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    #[inline]
    pub fn merge(&mut self, other: CompensatedC64) {
        self.re.merge(other.re);
        self.im.merge(other.im);
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

fn tree_c64(terms: &[Complex64]) -> CompensatedC64 {
    if terms.len() <= LEAF {
        let mut acc = CompensatedC64::new();
        for &t in terms {
            acc.add(t);
        }
        return acc;
    }
    let mid = terms.len() / 2;
    let mut left = tree_c64(&terms[..mid]);
    left.merge(tree_c64(&terms[mid..]));
    left
}

fn par_tree_c64(terms: &[Complex64]) -> CompensatedC64 {
    if terms.len() < PAR_CUTOFF {
        return tree_c64(terms);
    }
    let mid = terms.len() / 2;
    let (mut left, right) = rayon::join(|| par_tree_c64(&terms[..mid]), || par_tree_c64(&terms[mid..]));
    left.merge(right);
    left
}

fn tree_f64(terms: &[f64]) -> CompensatedF64 {
    if terms.len() <= LEAF {
        let mut acc = CompensatedF64::new();
        for &t in terms {
            acc.add(t);
        }
        return acc;
    }
    let mid = terms.len() / 2;
    let mut left = tree_f64(&terms[..mid]);
    left.merge(tree_f64(&terms[mid..]));
    left
}

fn par_tree_f64(terms: &[f64]) -> CompensatedF64 {
    if terms.len() < PAR_CUTOFF {
        return tree_f64(terms);
    }
    let mid = terms.len() / 2;
    let (mut left, right) = rayon::join(|| par_tree_f64(&terms[..mid]), || par_tree_f64(&terms[mid..]));
    left.merge(right);
    left
}

/// Compensated sum of a stream of complex terms. The reduction tree depends
/// only on term positions, so the result is reproducible regardless of how
/// the terms were produced.
pub fn compensated_sum<I>(terms: I) -> Complex64
where
    I: IntoIterator<Item = Complex64>,
{
    let v: Vec<Complex64> = terms.into_iter().collect();
    tree_c64(&v).value()
}

/// Parallel variant of [`compensated_sum`]; bitwise equal to the serial
/// result for every thread count.
pub fn par_compensated_sum(terms: &[Complex64]) -> Complex64 {
    par_tree_c64(terms).value()
}

/// Compensated sum of real terms over the same fixed tree.
pub fn compensated_sum_f64(terms: &[f64]) -> f64 {
    tree_f64(terms).value()
}

/// Parallel variant of [`compensated_sum_f64`].
pub fn par_compensated_sum_f64(terms: &[f64]) -> f64 {
    par_tree_f64(terms).value()
}

/// Merge per-slice accumulators in slice order. Used by callers that sum
/// independent row partials (one accumulator per coset row or grid row).
pub fn merge_partials_c64(parts: &[CompensatedC64]) -> Complex64 {
    fn tree(parts: &[CompensatedC64]) -> CompensatedC64 {
        if parts.len() <= LEAF {
            let mut acc = CompensatedC64::new();
            for p in parts {
                acc.merge(*p);
            }
            return acc;
        }
        let mid = parts.len() / 2;
        let mut left = tree(&parts[..mid]);
        left.merge(tree(&parts[mid..]));
        left
    }
    tree(parts).value()
}

/// Real-valued analogue of [`merge_partials_c64`].
pub fn merge_partials_f64(parts: &[CompensatedF64]) -> f64 {
    fn tree(parts: &[CompensatedF64]) -> CompensatedF64 {
        if parts.len() <= LEAF {
            let mut acc = CompensatedF64::new();
            for p in parts {
                acc.merge(*p);
            }
            return acc;
        }
        let mid = parts.len() / 2;
        let mut left = tree(&parts[..mid]);
        left.merge(tree(&parts[mid..]));
        left
    }
    tree(parts).value()
}
