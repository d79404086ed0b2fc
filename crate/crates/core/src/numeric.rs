//! Shared numeric helpers: compensated accumulation, fast power-law kernels,
//! golden-section minimization and deterministic parallel reductions.

use rayon::prelude::*;

/// Neumaier compensated accumulator. The running error term makes long
/// pair sums insensitive to accumulation order noise while the fold itself
/// stays in one fixed order.
#[derive(Clone, Copy, Debug, Default)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn new() -> Self {
        Neumaier::default()
    }

    #[inline]
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Compensated sum over a slice in index order.
pub fn comp_sum(values: &[f64]) -> f64 {
    let mut acc = Neumaier::new();
    for &v in values {
        acc.add(v);
    }
    acc.total()
}

/// Evaluates `r^(-alpha)` from `r^2`, specializing the integer and
/// half-integer exponents that dominate the kernel sums.
#[derive(Clone, Copy, Debug)]
pub enum PowerLaw {
    /// alpha = 2k: powi on r^2.
    EvenInt(i32),
    /// alpha = m integer: powi on r.
    Int(i32),
    /// alpha = m/2 with odd m: powi on sqrt(r).
    HalfOdd(i32),
    /// General exponent, stored as -alpha/2 for `powf` on r^2.
    General(f64),
}

impl PowerLaw {
    pub fn inverse(alpha: f64) -> Self {
        let twice = 2.0 * alpha;
        if alpha.fract() == 0.0 && alpha.abs() < 64.0 {
            let m = alpha as i32;
            if m % 2 == 0 {
                PowerLaw::EvenInt(m / 2)
            } else {
                PowerLaw::Int(m)
            }
        } else if twice.fract() == 0.0 && twice.abs() < 128.0 {
            PowerLaw::HalfOdd(twice as i32)
        } else {
            PowerLaw::General(-alpha / 2.0)
        }
    }

    /// r^(-alpha) given r^2.
    #[inline]
    pub fn eval_r2(&self, r2: f64) -> f64 {
        match *self {
            PowerLaw::EvenInt(k) => r2.powi(-k),
            PowerLaw::Int(m) => r2.sqrt().powi(-m),
            PowerLaw::HalfOdd(m) => r2.sqrt().sqrt().powi(-m),
            PowerLaw::General(e) => r2.powf(e),
        }
    }
}

/// Evaluates `|d|^p`, specializing p in {1, 3/2, 2, integers}.
#[derive(Clone, Copy, Debug)]
pub enum AbsPow {
    Abs,
    Square,
    Int(i32),
    HalfOdd(i32),
    General(f64),
}

impl AbsPow {
    pub fn new(p: f64) -> Self {
        let twice = 2.0 * p;
        if p == 1.0 {
            AbsPow::Abs
        } else if p == 2.0 {
            AbsPow::Square
        } else if p.fract() == 0.0 && p.abs() < 64.0 {
            AbsPow::Int(p as i32)
        } else if twice.fract() == 0.0 && twice.abs() < 128.0 {
            AbsPow::HalfOdd(twice as i32)
        } else {
            AbsPow::General(p)
        }
    }

    #[inline]
    pub fn eval(&self, d: f64) -> f64 {
        match *self {
            AbsPow::Abs => d.abs(),
            AbsPow::Square => d * d,
            AbsPow::Int(m) => d.abs().powi(m),
            AbsPow::HalfOdd(m) => d.abs().sqrt().powi(m),
            AbsPow::General(p) => d.abs().powf(p),
        }
    }
}

/// Golden-section minimization on [a, b] with a fixed iteration budget.
/// Returns (argmin, min). Deterministic; exact for unimodal objectives,
/// a refinement heuristic otherwise.
pub fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, iters: usize) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    if b < a {
        std::mem::swap(&mut a, &mut b);
    }
    let mut c = b - (b - a) * INV_PHI;
    let mut d = a + (b - a) * INV_PHI;
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..iters {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - (b - a) * INV_PHI;
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + (b - a) * INV_PHI;
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Parallel map over `0..n` followed by a compensated fold in index order.
/// The reduction order is independent of the worker count, so the result is
/// bit-identical for any Rayon pool size.
pub fn par_sum_indexed<F>(n: usize, f: F) -> (f64, u64)
where
    F: Fn(usize) -> (f64, u64) + Sync,
{
    let parts: Vec<(f64, u64)> = (0..n).into_par_iter().map(f).collect();
    let mut acc = Neumaier::new();
    let mut pairs = 0u64;
    for (v, c) in parts {
        acc.add(v);
        pairs += c;
    }
    (acc.total(), pairs)
}

/// Relative drift between a coarse and a fine value: |a - b| / |b|.
pub fn drift(coarse: f64, fine: f64) -> f64 {
    if fine == 0.0 {
        if coarse == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        (coarse - fine).abs() / fine.abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neumaier_recovers_cancellation() {
        let mut acc = Neumaier::new();
        acc.add(1.0);
        acc.add(1e100);
        acc.add(1.0);
        acc.add(-1e100);
        assert_eq!(acc.total(), 2.0);
    }

    #[test]
    fn power_law_matches_powf() {
        for &alpha in &[1.0, 1.5, 2.0, 2.5, 3.0, 3.7, 4.0] {
            let pl = PowerLaw::inverse(alpha);
            for &r2 in &[0.25, 1.0, 2.0, 9.0] {
                let want = r2.powf(-alpha / 2.0);
                let got = pl.eval_r2(r2);
                assert!(
                    (got - want).abs() <= 1e-14 * want.abs(),
                    "alpha={alpha} r2={r2}: {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn abs_pow_matches_powf() {
        for &p in &[1.0, 1.5, 2.0, 3.0, 2.3] {
            let ap = AbsPow::new(p);
            for &d in &[-2.0, -0.5, 0.0, 0.125, 3.0] {
                let want = d.abs().powf(p);
                let got = ap.eval(d);
                assert!(
                    (got - want).abs() <= 1e-14 * want.abs().max(1.0),
                    "p={p} d={d}: {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn golden_finds_parabola_min() {
        let (x, v) = golden_min(|x| (x - 0.3) * (x - 0.3) + 1.0, -1.0, 2.0, 80);
        assert!((x - 0.3).abs() < 1e-9);
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn par_sum_is_order_fixed() {
        let f = |i: usize| ((i as f64).sin(), 1u64);
        let (a, ca) = par_sum_indexed(10_000, f);
        let (b, cb) = par_sum_indexed(10_000, f);
        assert_eq!(a.to_bits(), b.to_bits());
        assert_eq!(ca, cb);
    }
}
