//! Euler characteristics of Milnor fibres of images, from multiple point
//! data.
//!
//! All formulas take an [`InvariantTuple`] and are evaluated over a common
//! denominator; a value that is not an integer means the tuple cannot come
//! from a germ and is reported as [`Error::NonIntegralChi`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::milnor::hypersurface_milnor;
use crate::multiple_points::InvariantTuple;
use crate::poly::{rat, resultant, Polynomial, Rational};
use crate::standard_basis::Engine;

/// One stratum of a stratification of the special fibre.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumDatum {
    pub name: String,
    /// `χ(cl X, cl X \ X)` inside the ball.
    pub chi_pair: i64,
    /// Reduced Euler characteristic of the transverse Milnor fibre.
    pub chi_tmf_reduced: i64,
}

impl StratumDatum {
    pub fn new(name: impl Into<String>, chi_pair: i64, chi_tmf_reduced: i64) -> StratumDatum {
        StratumDatum {
            name: name.into(),
            chi_pair,
            chi_tmf_reduced,
        }
    }
}

/// `χ(GF) − χ(SF) = Σ χ̃(TMF_X) · χ(cl X, cl X \ X)`.
pub fn stratified_euler_difference(strata: &[StratumDatum]) -> i64 {
    strata.iter().map(|s| s.chi_tmf_reduced * s.chi_pair).sum()
}

/// `num / den` as an integer, or an error naming the formula.
fn exact(formula: &str, num: i64, den: i64) -> Result<i64> {
    if num % den != 0 {
        return Err(Error::NonIntegralChi {
            formula: formula.to_string(),
            value: Rational::new(num.into(), den.into()).to_string(),
        });
    }
    Ok(num / den)
}

struct Vals {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
    b2: i64,
    b3: i64,
    q: i64,
}

fn vals(t: &InvariantTuple) -> Vals {
    Vals {
        a: t.mu_d2 as i64,
        b: t.mu_d2_h as i64,
        c: t.mu_d3 as i64,
        d: t.mu_d3_h1 as i64,
        b2: t.beta2.into(),
        b3: t.beta3.into(),
        q: t.q as i64,
    }
}

/// Euler characteristics of the closures of the strata of the image of a
/// stable perturbation, and the relative values entering the stratified sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumReport {
    pub s1: i64,
    pub s11: i64,
    pub s111: i64,
    pub s2: i64,
    pub s1111: i64,
    pub s12: i64,
    pub pair_s11: i64,
    pub pair_s111: i64,
    pub pair_s2: i64,
}

impl StratumReport {
    /// The strata of the special fibre with their transverse data: the cross
    /// cap curve has a transverse Milnor fibre with Euler characteristic 2,
    /// and every multi-germ stratum a contractible one minus a point.
    pub fn strata_data(&self) -> Vec<StratumDatum> {
        vec![
            StratumDatum::new("S_{1,1}", self.pair_s11, -1),
            StratumDatum::new("S_{1,1,1}", self.pair_s111, -1),
            StratumDatum::new("S_2", self.pair_s2, 1),
            StratumDatum::new("S_{1,1,1,1}", self.s1111, -1),
            StratumDatum::new("S_{1,2}", self.s12, -1),
        ]
    }
}

pub fn strata_chi(t: &InvariantTuple) -> Result<StratumReport> {
    let Vals {
        a,
        b,
        c,
        d,
        b2,
        b3,
        q,
    } = vals(t);
    let s1 = 1 - exact("chi(S_1)", 3 * (a + b) + c + 3 * d + 2 * b3 + 6 * q, 6)?;
    let s11 = exact(
        "chi(S_{1,1})",
        6 * b2 + 3 * (a - b) + 2 * (c - b3) + 18 * q,
        6,
    )?;
    let s111 = b3 - exact("chi(S_{1,1,1})", c - 3 * d + 2 * b3 + 18 * q, 6)?;
    let s2 = b2 - b;
    let s1111 = q;
    let s12 = d + b3;
    Ok(StratumReport {
        s1,
        s11,
        s111,
        s2,
        s1111,
        s12,
        pair_s11: s11 - s111 - s2 + s12,
        pair_s111: s111 - s1111 - s12,
        pair_s2: s2 - s12,
    })
}

/// The image Milnor number: the number of spheres in the disentanglement.
pub fn image_milnor_number(t: &InvariantTuple) -> Result<i64> {
    let Vals {
        a, b, c, d, b3, q, ..
    } = vals(t);
    let mu = exact("mu_I", 3 * (a + b) + c + 3 * d + 2 * b3 + 6 * q, 6)?;
    if mu < 0 {
        return Err(Error::NegativeMuI(mu.to_string()));
    }
    Ok(mu)
}

/// Euler characteristic of the Milnor fibre of the image.
pub fn chi_mf_image(t: &InvariantTuple) -> Result<i64> {
    let Vals {
        a,
        b,
        c,
        d,
        b2,
        b3,
        q,
    } = vals(t);
    let half = exact("chi(MF)", c + 5 * d, 2)?;
    Ok(1 + b2 - (a + 2 * b + half + 2 * b3 + 4 * q))
}

/// `χ(MF_g) − χ(Dis(f))`.
pub fn chi_difference_3to4(t: &InvariantTuple) -> Result<i64> {
    let Vals {
        a,
        b,
        c,
        d,
        b2,
        b3,
        q,
    } = vals(t);
    let bracket = exact(
        "chi(MF) - chi(Dis)",
        3 * (a + 3 * b) + 2 * (c + 6 * d + 5 * b3) + 18 * q,
        6,
    )?;
    Ok(b2 - bracket)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChiRoutes {
    /// Closed form for `χ(MF_g)`.
    pub direct: i64,
    /// `χ(Dis) + (χ(MF_g) − χ(Dis))`.
    pub via_difference: i64,
    /// `χ(Dis)` plus the stratified sum over the strata of the special fibre.
    pub stratified: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImageChiReport {
    pub tuple: InvariantTuple,
    pub mu_i: i64,
    pub chi_dis: i64,
    pub chi_mf: i64,
    pub chi_difference: i64,
    pub strata: StratumReport,
    pub routes: ChiRoutes,
    pub consistency: bool,
}

pub fn image_chi(t: &InvariantTuple) -> Result<ImageChiReport> {
    let strata = strata_chi(t)?;
    let mu_i = image_milnor_number(t)?;
    let chi_dis = 1 - mu_i;
    let direct = chi_mf_image(t)?;
    let chi_difference = chi_difference_3to4(t)?;
    let routes = ChiRoutes {
        direct,
        via_difference: chi_dis + chi_difference,
        stratified: chi_dis + stratified_euler_difference(&strata.strata_data()),
    };
    let consistency = routes.direct == routes.via_difference && routes.direct == routes.stratified;
    Ok(ImageChiReport {
        tuple: *t,
        mu_i,
        chi_dis,
        chi_mf: direct,
        chi_difference,
        strata,
        routes,
        consistency,
    })
}

/// Euler characteristics for a composed germ `F = g ∘ f` where
/// `f: C^n → C^2` is an ICIS and `g: C^2 → C` an isolated plane curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZariskiChi {
    pub chi_mf_f: i64,
    pub chi_special_fibre: i64,
    /// Milnor fibre of the composite `g ∘ f`.
    #[serde(rename = "chi_mf_F")]
    pub chi_mf_composite: i64,
    /// `χ̃(F_a^{-1}(0)) − μ_I(f)`; zero whenever `n` is odd.
    pub odd_n_defect: Option<i64>,
}

pub fn zariski_chi(mu_g: i64, mu_f: i64, n: i64, mu_i_f: i64) -> Result<ZariskiChi> {
    if mu_g < 0 || mu_f < 0 || mu_i_f < 0 {
        return Err(Error::BadParams(
            "Milnor numbers must be non-negative".into(),
        ));
    }
    if n < 2 {
        return Err(Error::BadParams(format!("need n >= 2, got {n}")));
    }
    let sign = |e: i64| if e.rem_euclid(2) == 0 { 1 } else { -1 };
    let chi_mf_f = 1 + sign(n - 2) * mu_f;
    let chi_special_fibre = mu_i_f + (sign(n) + 1) * mu_g * chi_mf_f + 1;
    let chi_mf_composite = chi_special_fibre - mu_g * chi_mf_f;
    let odd_n_defect = (n % 2 != 0).then(|| chi_special_fibre - 1 - mu_i_f);
    Ok(ZariskiChi {
        chi_mf_f,
        chi_special_fibre,
        chi_mf_composite,
        odd_n_defect,
    })
}

/// Two independent evaluations of the Milnor fibre of the discriminant of
/// `(x, u) ↦ (x, u^3 + φ(x) u)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquidimReport {
    pub n: usize,
    pub phi: String,
    pub mu_phi: u64,
    pub chi_mf_formula: i64,
    pub chi_mf_stratified: i64,
    pub chi_dis: i64,
    pub cusp_edge: StratumDatum,
    pub discriminant: String,
    /// `discriminant / (4 φ^3 + 27 Y^2)`.
    pub discriminant_ratio: String,
    pub agree: bool,
}

pub fn equidim_example(engine: &Engine, phi: &Polynomial, n: usize) -> Result<EquidimReport> {
    if n < 2 || phi.ring().len() != n - 1 {
        return Err(Error::BadParams(format!(
            "phi must be a polynomial in n-1 = {} variables, got {}",
            n.saturating_sub(1),
            phi.ring().len()
        )));
    }
    let mu = hypersurface_milnor(engine, phi)?.mu;
    let m = mu as i64;
    let sign = |e: usize| if e % 2 == 0 { 1 } else { -1 };
    let chi_mf_formula = -1 + 3 * sign(n - 1) * m;
    let chi_dis = 1 + sign(n - 1) * m;
    let cusp_edge = StratumDatum::new("C", 1 + sign(n - 2) * m, -2);
    let chi_mf_stratified = chi_dis + stratified_euler_difference(std::slice::from_ref(&cusp_edge));

    let base = phi.ring();
    let u = base.fresh_name("u");
    let y_name = base.extended(&[u.as_str()]).fresh_name("Y");
    let ring = base.extended(&[u.as_str(), y_name.as_str()]);
    let phi_r = phi.to_ring(&ring)?;
    let uu = Polynomial::var(&ring, &u)?;
    let yy = Polynomial::var(&ring, &y_name)?;
    let germ = &(&uu.pow(3) + &(&phi_r * &uu)) - &yy;
    let deriv = &uu.pow(2).scale(&rat(3)) + &phi_r;
    let disc = resultant(&germ, &deriv, &u)?;
    let expected = &phi_r.pow(3).scale(&rat(4)) + &yy.pow(2).scale(&rat(27));
    let ratio = disc
        .ratio_to(&expected)
        .filter(|r| !num_traits::Zero::is_zero(r));
    let Some(ratio) = ratio else {
        return Err(Error::BadInput(format!(
            "discriminant {disc} is not a multiple of {expected}"
        )));
    };
    let disc = disc.to_ring(&base.extended(&[y_name.as_str()]))?;
    Ok(EquidimReport {
        n,
        phi: phi.to_string(),
        mu_phi: mu,
        chi_mf_formula,
        chi_mf_stratified,
        chi_dis,
        cusp_edge,
        discriminant: disc.to_string(),
        discriminant_ratio: ratio.to_string(),
        agree: chi_mf_formula == chi_mf_stratified,
    })
}
