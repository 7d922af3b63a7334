//! Globally adaptive Gauss-Kronrod (7/15) quadrature.
//!
//! The panel with the largest error estimate is bisected until the summed
//! estimate meets the tolerance, which copes with integrable endpoint
//! singularities. Integrands may be vector valued; all components share the
//! panel refinement and the error is the largest component error.

use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Stopping rule for [`integrate_vec`].
#[derive(Clone, Copy, Debug)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_panels: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs: 1e-13,
            rel: 1e-13,
            max_panels: 4000,
        }
    }
}

/// Integral value with its error estimate.
#[derive(Clone, Debug)]
pub struct Integral {
    pub value: Vec<f64>,
    pub error: f64,
    pub panels: usize,
}

struct Panel {
    a: f64,
    b: f64,
    value: Vec<f64>,
    error: f64,
}

fn kronrod<F: Fn(f64) -> Vec<f64>>(f: &F, a: f64, b: f64, dim: usize) -> Result<Panel> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut k = vec![0.0; dim];
    let mut g = vec![0.0; dim];
    let mut add = |x: f64, wk: f64, wg: f64| -> Result<()> {
        let y = f(x);
        if y.len() != dim {
            return Err(Error::Input(format!(
                "integrand returned {} values, expected {dim}",
                y.len()
            )));
        }
        for i in 0..dim {
            if !y[i].is_finite() {
                return Err(Error::Domain(format!("integrand not finite at x = {x}")));
            }
            k[i] += wk * y[i];
            g[i] += wg * y[i];
        }
        Ok(())
    };
    add(center, WGK[7], WG[3])?;
    for j in 0..7 {
        let wg = if j % 2 == 1 { WG[j / 2] } else { 0.0 };
        let dx = half * XGK[j];
        add(center - dx, WGK[j], wg)?;
        add(center + dx, WGK[j], wg)?;
    }
    let mut error = 0.0f64;
    for i in 0..dim {
        k[i] *= half;
        g[i] *= half;
        error = error.max((k[i] - g[i]).abs());
    }
    Ok(Panel {
        a,
        b,
        value: k,
        error,
    })
}

/// Integrates a vector-valued `f` over `[a, b]`. Nodes never touch the
/// endpoints, so `f` may be singular there.
pub fn integrate_vec<F: Fn(f64) -> Vec<f64>>(
    f: F,
    a: f64,
    b: f64,
    dim: usize,
    tol: Tolerance,
) -> Result<Integral> {
    if !(a.is_finite() && b.is_finite()) || a >= b {
        return Err(Error::Input(format!("bad interval [{a}, {b}]")));
    }
    let mut panels = vec![kronrod(&f, a, b, dim)?];
    loop {
        let mut total = vec![0.0; dim];
        let mut error = 0.0;
        let mut worst = 0;
        for (i, p) in panels.iter().enumerate() {
            for (t, v) in total.iter_mut().zip(&p.value) {
                *t += v;
            }
            error += p.error;
            if p.error > panels[worst].error {
                worst = i;
            }
        }
        let scale = total.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let (pa, pb) = (panels[worst].a, panels[worst].b);
        let mid = 0.5 * (pa + pb);
        let exhausted = panels.len() >= tol.max_panels || mid <= pa || mid >= pb;
        if error <= tol.abs.max(tol.rel * scale) || exhausted {
            return Ok(Integral {
                value: total,
                error,
                panels: panels.len(),
            });
        }
        let p = panels.swap_remove(worst);
        panels.push(kronrod(&f, p.a, mid, dim)?);
        panels.push(kronrod(&f, mid, p.b, dim)?);
    }
}

/// Scalar convenience wrapper around [`integrate_vec`].
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: Tolerance) -> Result<(f64, f64)> {
    let r = integrate_vec(|x| vec![f(x)], a, b, 1, tol)?;
    Ok((r.value[0], r.error))
}
