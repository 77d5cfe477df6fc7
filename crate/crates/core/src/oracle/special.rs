//! Reference evaluations of the Dawson function that share no code path
//! with [`crate::dawson()`].

/// Unevaluated sum `hi + lo` carrying about 32 significant digits.
#[derive(Debug, Clone, Copy)]
struct DoubleDouble {
    hi: f64,
    lo: f64,
}

impl DoubleDouble {
    fn from_f64(v: f64) -> Self {
        Self { hi: v, lo: 0.0 }
    }

    fn two_sum(a: f64, b: f64) -> Self {
        let s = a + b;
        let bb = s - a;
        let err = (a - (s - bb)) + (b - bb);
        Self { hi: s, lo: err }
    }

    fn quick_two_sum(a: f64, b: f64) -> Self {
        let s = a + b;
        Self {
            hi: s,
            lo: b - (s - a),
        }
    }

    fn add(self, other: Self) -> Self {
        let s = Self::two_sum(self.hi, other.hi);
        let t = Self::two_sum(self.lo, other.lo);
        let s = Self::quick_two_sum(s.hi, s.lo + t.hi);
        Self::quick_two_sum(s.hi, s.lo + t.lo)
    }

    fn mul(self, other: Self) -> Self {
        let p = self.hi * other.hi;
        let err = self.hi.mul_add(other.hi, -p);
        let err = err + (self.hi * other.lo + self.lo * other.hi);
        Self::quick_two_sum(p, err)
    }

    fn div_f64(self, d: f64) -> Self {
        let q1 = self.hi / d;
        let p = Self::from_f64(q1).mul(Self::from_f64(d));
        let r = self.add(Self {
            hi: -p.hi,
            lo: -p.lo,
        });
        let q2 = r.hi / d;
        Self::quick_two_sum(q1, q2)
    }

    fn abs_hi(self) -> f64 {
        self.hi.abs()
    }
}

/// Dawson function from its alternating Maclaurin series
/// `sum (-1)^n 2^n x^(2n+1) / (2n+1)!!`, summed in double-double so the
/// cancellation for `|x|` up to about 7 stays below double precision.
pub fn dawson_series_dd(x: f64) -> f64 {
    let x2 = DoubleDouble::from_f64(x).mul(DoubleDouble::from_f64(x));
    let step = x2.mul(DoubleDouble::from_f64(-2.0));
    let mut term = DoubleDouble::from_f64(x);
    let mut sum = term;
    let mut n = 0u32;
    loop {
        n += 1;
        term = term.mul(step).div_f64(f64::from(2 * n + 1));
        sum = sum.add(term);
        if f64::from(n) > 2.0 * x * x && term.abs_hi() < 1e-34 * sum.abs_hi().max(1e-300) {
            break;
        }
        if n > 10_000 {
            break;
        }
    }
    sum.hi + sum.lo
}

// 8-point Gauss-Legendre nodes and weights on [-1, 1].
const GL_NODES: [f64; 4] = [
    0.183_434_642_495_649_8,
    0.525_532_409_916_329,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_3,
];
const GL_WEIGHTS: [f64; 4] = [
    0.362_683_783_378_362,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_5,
    0.101_228_536_290_376_3,
];

/// Dawson function from `D(x) = integral_0^x exp(-s (2x - s)) ds` by
/// composite 8-point Gauss-Legendre. The integrand decays on a scale
/// `1/(2x)`, so the range is cut where it falls below `exp(-40)`.
pub fn dawson_quadrature(x: f64) -> f64 {
    if x < 0.0 {
        return -dawson_quadrature(-x);
    }
    if x == 0.0 {
        return 0.0;
    }
    let upper = x.min(40.0 / x);
    let panels = 400;
    let h = upper / panels as f64;
    let f = |s: f64| (-s * (2.0 * x - s)).exp();
    let mut total = 0.0;
    for i in 0..panels {
        let mid = (i as f64 + 0.5) * h;
        let half = 0.5 * h;
        let mut panel = 0.0;
        for (node, weight) in GL_NODES.iter().zip(GL_WEIGHTS) {
            panel += weight * (f(mid - half * node) + f(mid + half * node));
        }
        total += panel * half;
    }
    total
}
