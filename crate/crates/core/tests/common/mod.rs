//! Independent numeric and matrix oracles shared by the integration suites.
//! Nothing here calls the engine's own oracle module.

#![allow(dead_code)]

pub mod dsl_gen;

use num_complex::Complex;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use rand_distr::StandardNormal;

use wres_core::clifford::CliffordWord;
use wres_core::residue::Poly;
use wres_core::scalars::Gaussian;
use wres_core::{Cl, Rational, XiN, K};

pub type GI = Complex<i64>;

/// Dense square matrix over the Gaussian integers.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat {
    pub d: usize,
    pub a: Vec<GI>,
}

impl Mat {
    pub fn zero(d: usize) -> Self {
        Self { d, a: vec![GI::zero(); d * d] }
    }

    pub fn identity(d: usize) -> Self {
        let mut m = Self::zero(d);
        for i in 0..d {
            m.a[i * d + i] = GI::new(1, 0);
        }
        m
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        let d = self.d;
        let mut m = Self::zero(d);
        for i in 0..d {
            for k in 0..d {
                let x = self.a[i * d + k];
                if x.is_zero() {
                    continue;
                }
                for j in 0..d {
                    m.a[i * d + j] += x * o.a[k * d + j];
                }
            }
        }
        m
    }

    pub fn scale(&self, c: GI) -> Mat {
        Mat { d: self.d, a: self.a.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, o: &Mat) -> Mat {
        Mat { d: self.d, a: self.a.iter().zip(&o.a).map(|(x, y)| x + y).collect() }
    }

    pub fn trace(&self) -> GI {
        (0..self.d).map(|i| self.a[i * self.d + i]).sum()
    }

    fn kron(&self, o: &Mat) -> Mat {
        let d = self.d * o.d;
        let mut m = Self::zero(d);
        for i in 0..self.d {
            for j in 0..self.d {
                for k in 0..o.d {
                    for l in 0..o.d {
                        m.a[(i * o.d + k) * d + j * o.d + l] = self.a[i * self.d + j] * o.a[k * o.d + l];
                    }
                }
            }
        }
        m
    }
}

fn pauli(k: u8) -> Mat {
    let (z, o, i) = (GI::new(0, 0), GI::new(1, 0), GI::new(0, 1));
    let a = match k {
        1 => vec![z, o, o, z],
        2 => vec![z, -i, i, z],
        3 => vec![o, z, z, -o],
        _ => vec![o, z, z, o],
    };
    Mat { d: 2, a }
}

/// Matrices `c_1..c_n` with `c_j c_k + c_k c_j = -2δ_jk`.
///
/// Odd `n` borrows the first `n` generators of the `n+1` representation, in
/// which the volume element is traceless; `trace_scale` rescales the matrix
/// trace to the `2^⌊n/2⌋`-dimensional module.
pub struct Gammas {
    pub c: Vec<Mat>,
    pub dim: usize,
    /// (numerator, denominator) applied to raw traces.
    pub trace_scale: (i64, i64),
}

pub fn gammas(n: u8) -> Gammas {
    let even = n + n % 2;
    let m = (even / 2) as usize;
    let mut c = Vec::new();
    for k in 0..m {
        for p in [1u8, 2] {
            let mut g = Mat::identity(1);
            for slot in 0..m {
                let f = match slot.cmp(&k) {
                    std::cmp::Ordering::Less => pauli(3),
                    std::cmp::Ordering::Equal => pauli(p),
                    std::cmp::Ordering::Greater => pauli(0),
                };
                g = g.kron(&f);
            }
            // hermitian generators square to +1; multiply by i
            c.push(g.scale(GI::new(0, 1)));
        }
    }
    c.truncate(n as usize);
    let dim = 1usize << m;
    let spinor = 1i64 << (n / 2);
    Gammas { c, dim, trace_scale: (spinor, dim as i64) }
}

impl Gammas {
    pub fn word(&self, w: &CliffordWord) -> Mat {
        w.generators().iter().fold(Mat::identity(self.dim), |acc, g| acc.mul(&self.c[*g as usize - 1]))
    }

    pub fn product(&self, gens: &[u8]) -> Mat {
        gens.iter().fold(Mat::identity(self.dim), |acc, g| acc.mul(&self.c[*g as usize - 1]))
    }

    pub fn expr(&self, e: &Cl) -> Mat {
        e.terms().fold(Mat::zero(self.dim), |acc, (w, k)| acc.add(&self.word(w).scale(k_to_gi(k))))
    }

    pub fn trace(&self, m: &Mat) -> GI {
        let t = m.trace() * self.trace_scale.0;
        assert_eq!(t.re % self.trace_scale.1, 0);
        assert_eq!(t.im % self.trace_scale.1, 0);
        t / self.trace_scale.1
    }
}

/// Exact conversion of a π-free Gaussian integer.
pub fn k_to_gi(k: &K) -> GI {
    let mut out = GI::zero();
    for (h, g) in k.entries() {
        assert_eq!(h, 0, "unexpected power of pi in {k}");
        assert!(g.re.is_integer() && g.im.is_integer(), "non-integer {k}");
        out = GI::new(g.re.to_integer().to_i64().unwrap(), g.im.to_integer().to_i64().unwrap());
    }
    out
}

pub fn gauss(re: i64, im: i64) -> K {
    K::from_gaussian(Gaussian::new(Rational::from_integer(re.into()), Rational::from_integer(im.into())))
}

/// A random proper rational `num / ((ξ-i)^p (ξ+i)^q)` with small Gaussian
/// integer coefficients and `p + q ≥ 1`. `slack` lowers the numerator degree
/// bound below `p + q`.
pub fn random_rational<G: Rng>(rng: &mut G, slack: u32, lower_poles: bool) -> XiN {
    loop {
        let p = rng.gen_range(0..=3u32);
        let q = if lower_poles { rng.gen_range(0..=3u32) } else { 0 };
        if p + q < slack.max(1) {
            continue;
        }
        let deg = rng.gen_range(0..=(p + q - slack) as usize);
        let coeffs: Vec<K> = (0..=deg).map(|_| gauss(rng.gen_range(-4..=4), rng.gen_range(-4..=4))).collect();
        let f = XiN::new(Poly::from_coeffs(coeffs), p, q);
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn eval(f: &XiN, z: Complex<f64>) -> Complex<f64> {
    let num = f.num().coeffs().iter().rev().fold(Complex::<f64>::zero(), |acc, c| acc * z + c.to_complex::<f64>());
    let i = Complex::new(0.0, 1.0);
    num / ((z - i).powu(f.p()) * (z + i).powu(f.q()))
}

/// `π⁺f(x) = (1/2πi) ∮_{|ξ-i|=1/2} f(ξ) / (x - ξ) dξ` by the periodic
/// trapezoid rule.
pub fn cauchy_pi_plus(f: &XiN, x: f64) -> Complex<f64> {
    let n = 4096;
    let i = Complex::new(0.0, 1.0);
    let tau = std::f64::consts::TAU;
    let mut acc = Complex::<f64>::zero();
    for k in 0..n {
        let e = Complex::from_polar(1.0, tau * k as f64 / n as f64);
        let xi = i + e * 0.5;
        acc += eval(f, xi) / (Complex::new(x, 0.0) - xi) * (i * e * 0.5);
    }
    acc * (tau / n as f64) / (i * tau)
}

#[allow(clippy::too_many_arguments)]
fn simpson<F: Fn(f64) -> Complex<f64>>(g: &F, a: f64, b: f64, fa: Complex<f64>, fm: Complex<f64>, fb: Complex<f64>, whole: Complex<f64>, tol: f64, depth: u32) -> Complex<f64> {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (g(lm), g(rm));
    let left = (fa + flm * 4.0 + fm) * ((m - a) / 6.0);
    let right = (fm + frm * 4.0 + fb) * ((b - m) / 6.0);
    let delta = left + right - whole;
    if depth == 0 || delta.norm() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson(g, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + simpson(g, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

/// `∫_ℝ f` by adaptive Simpson after `ξ = tan θ`.
pub fn quad_integral(f: &XiN) -> Complex<f64> {
    let g = |t: f64| {
        let c = t.cos();
        if c.abs() < 1e-12 {
            // endpoint limit: the ξ^{-2} coefficient
            let lead = f.num().coeffs().get((f.p() + f.q()) as usize - 2).map_or(Complex::<f64>::zero(), |k| k.to_complex::<f64>());
            return lead;
        }
        eval(f, Complex::new(t.tan(), 0.0)) / (c * c)
    };
    let (a, b) = (-std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2);
    let (fa, fm, fb) = (g(a), g(0.0), g(b));
    let whole = (fa + fm * 4.0 + fb) * ((b - a) / 6.0);
    simpson(&g, a, b, fa, fm, fb, whole, 1e-13, 40)
}

pub fn rel(a: Complex<f64>, b: Complex<f64>, floor: f64) -> f64 {
    (a - b).norm() / b.norm().max(floor)
}

/// Monte-Carlo averages of `Π ξ_i^{a_i}` over the unit sphere in `ℝ^{n-1}`.
pub fn mc_sphere_means<G: Rng>(rng: &mut G, n: u8, monomials: &[Vec<u32>], samples: usize) -> Vec<f64> {
    let m = n as usize - 1;
    let top = monomials.iter().flatten().copied().max().unwrap_or(0) as usize;
    let mut sums = vec![0.0; monomials.len()];
    let mut v = vec![0.0f64; m];
    let mut pw = vec![vec![1.0f64; top + 1]; m];
    for _ in 0..samples {
        let mut r2 = 0.0;
        for x in v.iter_mut() {
            *x = rng.sample(StandardNormal);
            r2 += *x * *x;
        }
        let r = r2.sqrt();
        for (x, p) in v.iter().zip(pw.iter_mut()) {
            let y = x / r;
            for a in 1..=top {
                p[a] = p[a - 1] * y;
            }
        }
        for (s, e) in sums.iter_mut().zip(monomials) {
            let mut t = 1.0;
            for (a, p) in e.iter().zip(&pw) {
                t *= p[*a as usize];
            }
            *s += t;
        }
    }
    sums.into_iter().map(|s| s / samples as f64).collect()
}

/// Exponent vectors of total degree `≤ max_deg` in `m` variables.
pub fn monomials(m: usize, max_deg: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|e: Vec<u32>| {
                let used: u32 = e.iter().sum();
                (0..=max_deg - used).map(move |a| {
                    let mut e = e.clone();
                    e.push(a);
                    e
                })
            })
            .collect();
    }
    out
}

/// Surface area of the unit sphere in `ℝ^m`.
pub fn sphere_area(m: usize) -> f64 {
    fn gamma_half(k: usize) -> f64 {
        // Γ(k/2)
        if k == 2 {
            1.0
        } else if k == 1 {
            std::f64::consts::PI.sqrt()
        } else {
            (k as f64 / 2.0 - 1.0) * gamma_half(k - 2)
        }
    }
    2.0 * std::f64::consts::PI.powf(m as f64 / 2.0) / gamma_half(m)
}

/// `1 ∈ Cl` as an expression.
pub fn cl_word(gens: &[u8], c: K) -> Cl {
    let (s, w) = CliffordWord::from_product(gens);
    Cl::word(w, if s < 0 { -c } else { c })
}

/// The engine's exact rational evaluated at a real point in floating point.
pub fn eval_exact(f: &XiN, x: f64) -> Complex<f64> {
    eval(f, Complex::new(x, 0.0))
}
