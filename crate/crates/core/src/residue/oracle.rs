//! Floating-point cross-checks for the exact residue kernel.

use num_complex::Complex;
use num_traits::{Float, FloatConst};

use super::XiNRational;
use crate::scalars::ExactField;
use crate::{Error, Result};

fn c<T: Float>(x: f64) -> T {
    T::from(x).unwrap()
}

/// Evaluates `f` at a complex point.
pub fn eval_xin<T: Float + FloatConst, R: ExactField>(f: &XiNRational<R>, z: Complex<T>) -> Complex<T> {
    let mut num = Complex::new(T::zero(), T::zero());
    for coeff in f.num().coeffs().iter().rev() {
        num = num * z + coeff.to_complex::<T>();
    }
    let i = Complex::new(T::zero(), T::one());
    num / ((z - i).powu(f.p()) * (z + i).powu(f.q()))
}

/// `π⁺f(x)` at a real point from the Cauchy integral over a circle around
/// `+i`, refined by doubling the trapezoid until successive values agree
/// to `tol`.
pub fn oracle_pi_plus<T: Float + FloatConst, R: ExactField>(f: &XiNRational<R>, x: T, tol: T) -> Result<Complex<T>> {
    let i = Complex::new(T::zero(), T::one());
    let rho: T = c(0.5);
    let tau = T::PI() + T::PI();
    let z = Complex::new(x, T::zero());
    let rule = |n: usize| {
        let mut acc = Complex::new(T::zero(), T::zero());
        for k in 0..n {
            let theta = tau * T::from(k).unwrap() / T::from(n).unwrap();
            let e = Complex::new(theta.cos(), theta.sin());
            let xi = i + e * rho;
            let dxi = i * e * rho;
            acc = acc + eval_xin(f, xi) / (z - xi) * dxi;
        }
        // (1/2πi) ∮ ... with dθ = 2π/n
        acc * (tau / T::from(n).unwrap()) / (i * tau)
    };
    let mut n = 16usize;
    let mut prev = rule(n);
    while n < (1 << 20) {
        n *= 2;
        let cur = rule(n);
        let scale = cur.norm().max(c(1e-300));
        if (cur - prev).norm() <= tol * scale {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::Quadrature(format!("contour rule for pi_plus at x={}", x.to_f64().unwrap_or(f64::NAN))))
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn kronrod<T: Float, G: Fn(T) -> Complex<T>>(g: &G, a: T, b: T) -> (Complex<T>, T) {
    let half = (b - a) / c(2.0);
    let mid = (a + b) / c(2.0);
    let centre = g(mid);
    let mut k = centre * c::<T>(WGK[7]);
    let mut gs = centre * c::<T>(WG[3]);
    for j in 0..7 {
        let dx = half * c(XGK[j]);
        let s = g(mid - dx) + g(mid + dx);
        k = k + s * c::<T>(WGK[j]);
        if j % 2 == 1 {
            gs = gs + s * c::<T>(WG[j / 2]);
        }
    }
    (k * half, (k - gs).norm() * half.abs())
}

/// Adaptive Gauss–Kronrod (7/15) quadrature of `g` on `[a, b]` to relative
/// tolerance `tol`.
pub fn adaptive<T: Float, G: Fn(T) -> Complex<T>>(g: G, a: T, b: T, tol: T) -> Result<Complex<T>> {
    let (whole, _) = kronrod(&g, a, b);
    let target = (tol * whole.norm()).max(c(1e-14));
    let width = b - a;
    let mut stack = vec![(a, b)];
    let mut total = Complex::new(T::zero(), T::zero());
    let mut evaluations = 0usize;
    while let Some((lo, hi)) = stack.pop() {
        evaluations += 1;
        if evaluations > 200_000 {
            return Err(Error::Quadrature("interval budget exhausted".into()));
        }
        let (val, err) = kronrod(&g, lo, hi);
        if err <= target * (hi - lo) / width || (hi - lo) < c(1e-12) {
            total = total + val;
        } else {
            let mid = (lo + hi) / c(2.0);
            stack.push((lo, mid));
            stack.push((mid, hi));
        }
    }
    Ok(total)
}

/// `∫_ℝ f(ξ) dξ` via `ξ = tan θ` and adaptive quadrature on `(-π/2, π/2)`.
pub fn oracle_integral<T: Float + FloatConst, R: ExactField>(f: &XiNRational<R>, tol: T) -> Result<Complex<T>> {
    let half_pi = T::FRAC_PI_2();
    adaptive(
        |theta: T| {
            let x = theta.tan();
            let sec2 = T::one() + x * x;
            eval_xin(f, Complex::new(x, T::zero())) * sec2
        },
        -half_pi,
        half_pi,
        tol,
    )
}

/// Relative distance `|a - b| / max(|b|, floor)`.
pub fn rel_err<T: Float>(a: Complex<T>, b: Complex<T>, floor: T) -> T {
    (a - b).norm() / b.norm().max(floor)
}
