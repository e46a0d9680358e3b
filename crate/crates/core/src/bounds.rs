//! Evaluators for the conditional-variance uncertainty relations.
//!
//! Every evaluator returns a [`BoundReport`] carrying the left- and
//! right-hand sides, the gap, pass/fail flags, and every intermediate term,
//! so a failing or trivial bound can be diagnosed from the report alone.
//!
//! The families:
//! - **Sum bounds** ([`prop2_sum_bound`]): `Δ²S_inf + Δ²Q_inf ≥ base −
//!   M·[1/Δ²S_B + 1/Δ²Q_B]` with `M` an entanglement measure; pure-state
//!   variants use the concurrence or covariance entanglement, the
//!   mixed-state variant uses `CC_max²`.
//! - **Discord-type bounds** ([`prop3_discord_bound`]): correlator terms are
//!   divided by Wigner–Yanase skew informations of Bob's observables
//!   instead of his variances.
//! - **Measure-relaxed sum bounds** ([`prop4_g_bound`]): the correlator
//!   terms are relaxed to `G`, `1 + 2C²`, `2I(A:B)`, `4E_f`, or a
//!   three-observable `3C²/D` form.
//! - **Product bounds** ([`prop5_product_bound`]): `Δ²S_inf · Δ²Q_inf ≥
//!   Δ²S_A·Δ²Q_A − M·[Δ²S_A/Δ²S_B + Δ²Q_A/Δ²Q_B]`, plus three-observable
//!   product forms with the `T₁/T₂` term structure.
//! - **Collective local-uncertainty relations** ([`lur_violation`]):
//!   `Σ_i Δ²(A_i⊗I + I⊗B_i) ≥ U_A + U_B − correction(entanglement)`;
//!   dropping the correction gives the separability test whose violation
//!   certifies entanglement.
//! - **Interferometric visibility** ([`unitary_variance`],
//!   [`visibility_bound`]): `Δ²U = 1 − ν²` and the concurrence-dependent
//!   visibility trade-off `ν_U² + ν_V² ≥ 2(1 − C) − Δ²(U⊗I + I⊗V)`.
//! - **Mutual-information floor** ([`eq8_mutual_info_bound`]):
//!   `I(A:B) ≥ CC(M_A, M_B)² / (2‖M_A‖²‖M_B‖²)` in bits.
//!
//! Degenerate denominators follow one policy everywhere, implemented in
//! `ratio_term`: a ratio whose denominator is below [`tol::TAU_DENOM`] is 0
//! when its numerator is negligible (≤ [`tol::TAU_CC`]) and `+∞` otherwise;
//! an infinite subtracted term makes the RHS `−∞`, reported as trivially
//! satisfied with `nontrivial = false`.

use crate::inference::{embed_a, embed_b, inferred_variance, variance};
use crate::linalg::ComplexMatrix;
use crate::measures;
use crate::observables::{self, ObservableSpec};
use crate::states::DensityMatrix;
use crate::tol;
use crate::{CvurError, Result};
use std::fmt;
use std::str::FromStr;

/// How a report's `satisfied` flag is judged.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    /// `lhs ≥ rhs`: satisfied iff `gap ≥ −tol`.
    Inequality,
    /// `lhs = rhs`: satisfied iff `|gap| ≤ tol`.
    Identity,
}

impl BoundKind {
    fn as_str(self) -> &'static str {
        match self {
            BoundKind::Inequality => "inequality",
            BoundKind::Identity => "identity",
        }
    }
}

/// Outcome of evaluating one bound on one state.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub name: String,
    pub kind: BoundKind,
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs − rhs`, exactly as stored.
    pub gap: f64,
    /// Judged at [`tol::TAU_BOUND`]; see [`BoundReport::satisfied_with`]
    /// for other tolerances.
    pub satisfied: bool,
    /// `rhs > TAU_BOUND`: the bound actually constrains something.
    pub nontrivial: bool,
    /// Every variance, correlator, and measure entering the bound.
    pub components: Vec<(String, f64)>,
    /// Human-readable caveats (domain restrictions, conventions used).
    pub notes: Vec<String>,
}

impl BoundReport {
    pub fn new(
        name: impl Into<String>,
        kind: BoundKind,
        lhs: f64,
        rhs: f64,
        components: Vec<(String, f64)>,
        notes: Vec<String>,
    ) -> Self {
        let gap = lhs - rhs;
        BoundReport {
            name: name.into(),
            kind,
            lhs,
            rhs,
            gap,
            satisfied: judge(kind, gap, tol::TAU_BOUND),
            nontrivial: rhs > tol::TAU_BOUND,
            components,
            notes,
        }
    }

    /// Re-judge the satisfied flag at a caller-chosen tolerance
    /// (the `CVUR_TOL` override path; the stored flag always uses
    /// [`tol::TAU_BOUND`]).
    pub fn satisfied_with(&self, tolerance: f64) -> bool {
        judge(self.kind, self.gap, tolerance)
    }

    /// Look up one component by name.
    pub fn component(&self, name: &str) -> Option<f64> {
        self.components
            .iter()
            .find(|(n, _)| n == name)
            .map(|&(_, v)| v)
    }

    /// Fixed CSV header matching [`BoundReport::csv_row`].
    pub fn csv_header() -> &'static str {
        "name,kind,lhs,rhs,gap,satisfied,nontrivial"
    }

    /// One CSV row; floats carry 17 significant digits, infinities print
    /// as `inf`/`-inf`.
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.name,
            self.kind.as_str(),
            fmt_float(self.lhs),
            fmt_float(self.rhs),
            fmt_float(self.gap),
            self.satisfied,
            self.nontrivial
        )
    }

    /// JSON object. Hand-rolled so that non-finite values serialize as the
    /// strings `"inf"` / `"-inf"` / `"nan"` instead of being lost.
    pub fn to_json(&self) -> String {
        let mut out = String::from("{");
        out.push_str(&format!("\"name\":\"{}\",", escape(&self.name)));
        out.push_str(&format!("\"kind\":\"{}\",", self.kind.as_str()));
        out.push_str(&format!("\"lhs\":{},", json_num(self.lhs)));
        out.push_str(&format!("\"rhs\":{},", json_num(self.rhs)));
        out.push_str(&format!("\"gap\":{},", json_num(self.gap)));
        out.push_str(&format!("\"satisfied\":{},", self.satisfied));
        out.push_str(&format!("\"nontrivial\":{},", self.nontrivial));
        out.push_str("\"components\":{");
        for (i, (k, v)) in self.components.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&format!("\"{}\":{}", escape(k), json_num(*v)));
        }
        out.push_str("},\"notes\":[");
        for (i, note) in self.notes.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&format!("\"{}\"", escape(note)));
        }
        out.push_str("]}");
        out
    }
}

fn judge(kind: BoundKind, gap: f64, tolerance: f64) -> bool {
    match kind {
        BoundKind::Inequality => gap >= -tolerance,
        BoundKind::Identity => gap.abs() <= tolerance,
    }
}

fn fmt_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x == f64::INFINITY {
        "inf".into()
    } else if x == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        "nan".into()
    }
}

fn json_num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.17e}")
    } else {
        format!("\"{}\"", fmt_float(x))
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// `numer / Π denoms` under the degenerate-denominator policy: if every
/// factor exceeds [`tol::TAU_DENOM`] the ratio is computed; otherwise the
/// term is 0 for a negligible numerator (within [`tol::TAU_CC`]) and `+∞`
/// for a non-negligible one.
fn ratio_term(numer: f64, denoms: &[f64]) -> f64 {
    if denoms.iter().all(|&d| d > tol::TAU_DENOM) {
        numer / denoms.iter().product::<f64>()
    } else if numer.abs() <= tol::TAU_CC {
        0.0
    } else {
        f64::INFINITY
    }
}

fn require_pure(rho: &DensityMatrix, what: &str) -> Result<()> {
    if !rho.is_pure() {
        return Err(CvurError::InvalidParameter(format!(
            "{what} holds for pure states; got purity {:.12}",
            rho.purity()
        )));
    }
    Ok(())
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Everything one Pauli direction contributes to a two-qubit bound.
struct DirData {
    spec: ObservableSpec,
    /// Alice's local variance `1 − (n·r)²`.
    var_a: f64,
    /// Bob's local variance `1 − (n·s)²`.
    var_b: f64,
    /// Same-direction connected correlator `nᵀTn − (n·r)(n·s)`.
    cc: f64,
    /// Recipe inferred variance `Δ²_inf(n·σ)`.
    inf_var: f64,
}

fn dir_data(
    rho: &DensityMatrix,
    bloch: &crate::states::BlochDecomposition,
    n: [f64; 3],
) -> Result<DirData> {
    let spec = observables::pauli_from_vec(n)?;
    let nr = dot(n, bloch.r);
    let ns = dot(n, bloch.s);
    let mut tn = [0.0; 3];
    for (i, row) in bloch.t.iter().enumerate() {
        tn[i] = dot(*row, n);
    }
    let ntn = dot(n, tn);
    let inf_var = inferred_variance(rho, &spec, &spec)?;
    Ok(DirData {
        spec,
        var_a: 1.0 - nr * nr,
        var_b: 1.0 - ns * ns,
        cc: ntn - nr * ns,
        inf_var,
    })
}

fn skew_on_b(rho: &DensityMatrix, spec: &ObservableSpec) -> Result<f64> {
    measures::skew_information(rho, &embed_b(rho.dim_a, &spec.matrix))
}

fn parse_error<T: fmt::Display>(kind: &str, token: T, accepted: &str) -> CvurError {
    CvurError::InvalidParameter(format!(
        "unknown {kind} variant '{token}'; accepted: {accepted}"
    ))
}

/// Variants of the inferred-variance sum bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Prop2Variant {
    /// Pure states: `M = C²`, base `Δ²S_A + Δ²Q_A`.
    Concurrence,
    /// Pure states: `M = C²`, base relaxed to `1 − |n·m|`.
    Busch,
    /// Pure states: `M = E_cov²`.
    Covariance,
    /// Any state: `M = CC_max²`.
    CcMax,
}

impl FromStr for Prop2Variant {
    type Err = CvurError;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "concurrence" => Ok(Self::Concurrence),
            "busch" => Ok(Self::Busch),
            "covariance" => Ok(Self::Covariance),
            "ccmax" => Ok(Self::CcMax),
            other => Err(parse_error(
                "sum-bound",
                other,
                "concurrence, busch, covariance, ccmax",
            )),
        }
    }
}

impl fmt::Display for Prop2Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Concurrence => "concurrence",
            Self::Busch => "busch",
            Self::Covariance => "covariance",
            Self::CcMax => "ccmax",
        })
    }
}

/// Sum bound `Δ²S_inf + Δ²Q_inf ≥ base − M·[1/Δ²S_B + 1/Δ²Q_B]` for
/// Pauli directions `n`, `m`. The LHS always comes from the outcome recipe.
pub fn prop2_sum_bound(
    rho: &DensityMatrix,
    n: [f64; 3],
    m: [f64; 3],
    variant: Prop2Variant,
) -> Result<BoundReport> {
    let bloch = rho.bloch()?;
    let dn = dir_data(rho, &bloch, n)?;
    let dm = dir_data(rho, &bloch, m)?;
    let lhs = dn.inf_var + dm.inf_var;

    let (measure_name, measure) = match variant {
        Prop2Variant::Concurrence | Prop2Variant::Busch => {
            require_pure(rho, "this sum-bound variant")?;
            let c = measures::concurrence(rho)?.value;
            ("concurrence_sq".to_string(), c * c)
        }
        Prop2Variant::Covariance => {
            let e = measures::covariance_entanglement(rho)?.value;
            ("covariance_entanglement_sq".to_string(), e * e)
        }
        Prop2Variant::CcMax => {
            let cc = measures::max_connected_correlator(rho)?.value;
            ("ccmax_sq".to_string(), cc * cc)
        }
    };

    let base = match variant {
        Prop2Variant::Busch => 1.0 - dot(n, m).abs(),
        _ => dn.var_a + dm.var_a,
    };
    let rhs = base - ratio_term(measure, &[dn.var_b]) - ratio_term(measure, &[dm.var_b]);

    let mut components = vec![
        ("delta2_S_A".into(), dn.var_a),
        ("delta2_Q_A".into(), dm.var_a),
        ("delta2_S_B".into(), dn.var_b),
        ("delta2_Q_B".into(), dm.var_b),
        ("delta2_S_inf".into(), dn.inf_var),
        ("delta2_Q_inf".into(), dm.inf_var),
        ("base".into(), base),
        (measure_name, measure),
    ];
    if variant == Prop2Variant::Busch {
        components.push(("n_dot_m".into(), dot(n, m)));
    }
    Ok(BoundReport::new(
        format!("prop2_sum[{variant}]"),
        BoundKind::Inequality,
        lhs,
        rhs,
        components,
        Vec::new(),
    ))
}

/// Readings of the skew-information denominator `D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Prop3Variant {
    /// Each correlator divided by the skew information of its own
    /// Bob-side observable.
    PerObservable,
    /// One shared `D = min` of the two skew informations.
    SingleD,
}

impl FromStr for Prop3Variant {
    type Err = CvurError;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "per_observable" => Ok(Self::PerObservable),
            "single_d" => Ok(Self::SingleD),
            other => Err(parse_error("discord-bound", other, "per_observable, single_d")),
        }
    }
}

impl fmt::Display for Prop3Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::PerObservable => "per_observable",
            Self::SingleD => "single_d",
        })
    }
}

/// Discord-type sum bound: correlator terms divided by Bob-side skew
/// informations, `Δ²S_inf + Δ²Q_inf ≥ Δ²S_A + Δ²Q_A − CC(n,n)²/I_n −
/// CC(m,m)²/I_m` (per-observable reading) or with the shared
/// `D = min(I_n, I_m)`. Valid for any two-qubit state; degenerate skews
/// are folded into the report flags rather than raised as errors.
pub fn prop3_discord_bound(
    rho: &DensityMatrix,
    n: [f64; 3],
    m: [f64; 3],
    variant: Prop3Variant,
) -> Result<BoundReport> {
    let bloch = rho.bloch()?;
    let dn = dir_data(rho, &bloch, n)?;
    let dm = dir_data(rho, &bloch, m)?;
    let skew_n = skew_on_b(rho, &dn.spec)?;
    let skew_m = skew_on_b(rho, &dm.spec)?;
    let lhs = dn.inf_var + dm.inf_var;
    let base = dn.var_a + dm.var_a;

    let d = skew_n.min(skew_m);
    let rhs = match variant {
        Prop3Variant::PerObservable => {
            base - ratio_term(dn.cc * dn.cc, &[skew_n]) - ratio_term(dm.cc * dm.cc, &[skew_m])
        }
        Prop3Variant::SingleD => base - ratio_term(dn.cc * dn.cc + dm.cc * dm.cc, &[d]),
    };

    Ok(BoundReport::new(
        format!("prop3_discord[{variant}]"),
        BoundKind::Inequality,
        lhs,
        rhs,
        vec![
            ("delta2_S_A".into(), dn.var_a),
            ("delta2_Q_A".into(), dm.var_a),
            ("delta2_S_inf".into(), dn.inf_var),
            ("delta2_Q_inf".into(), dm.inf_var),
            ("cc_nn".into(), dn.cc),
            ("cc_mm".into(), dm.cc),
            ("skew_B_n".into(), skew_n),
            ("skew_B_m".into(), skew_m),
            ("d_min".into(), d),
        ],
        Vec::new(),
    ))
}

/// Variants of the measure-relaxed sum bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Prop4Variant {
    /// `M = G` (total correlation strength), any state.
    G,
    /// `M = 1 + 2C²`, any state.
    ConcurrenceRelaxed,
    /// `M = 2I(A:B)·‖n·σ‖⁴` per term (bits), any state.
    MutualInfo,
    /// `M = 4E_f·‖n·σ‖⁴` per term; pure states (where `I = 2E_f`).
    EofPure,
    /// Three-observable sum with `3C²/D`; pure states.
    ThreeObsSum,
}

impl FromStr for Prop4Variant {
    type Err = CvurError;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "g" => Ok(Self::G),
            "concurrence_relaxed" => Ok(Self::ConcurrenceRelaxed),
            "mutual_info" => Ok(Self::MutualInfo),
            "eof_pure" => Ok(Self::EofPure),
            "three_obs_sum" => Ok(Self::ThreeObsSum),
            other => Err(parse_error(
                "measure-relaxed-bound",
                other,
                "g, concurrence_relaxed, mutual_info, eof_pure, three_obs_sum",
            )),
        }
    }
}

impl fmt::Display for Prop4Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::G => "g",
            Self::ConcurrenceRelaxed => "concurrence_relaxed",
            Self::MutualInfo => "mutual_info",
            Self::EofPure => "eof_pure",
            Self::ThreeObsSum => "three_obs_sum",
        })
    }
}

/// Measure-relaxed sum bound. Two-observable variants use directions
/// `n`, `m` (pass `k = None`); the `three_obs_sum` variant requires a third
/// direction `k` and a pure state.
pub fn prop4_g_bound(
    rho: &DensityMatrix,
    n: [f64; 3],
    m: [f64; 3],
    k: Option<[f64; 3]>,
    variant: Prop4Variant,
) -> Result<BoundReport> {
    if variant == Prop4Variant::ThreeObsSum {
        let k = k.ok_or_else(|| {
            CvurError::InvalidParameter("three_obs_sum needs a third direction".into())
        })?;
        return prop4_three_obs_sum(rho, n, m, k);
    }
    if k.is_some() {
        return Err(CvurError::InvalidParameter(format!(
            "variant '{variant}' takes exactly two directions"
        )));
    }
    let bloch = rho.bloch()?;
    let dn = dir_data(rho, &bloch, n)?;
    let dm = dir_data(rho, &bloch, m)?;
    let lhs = dn.inf_var + dm.inf_var;
    let base = dn.var_a + dm.var_a;
    let norm4_n = dn.spec.spectral_norm().powi(4);
    let norm4_m = dm.spec.spectral_norm().powi(4);

    let mut components = vec![
        ("delta2_S_A".into(), dn.var_a),
        ("delta2_Q_A".into(), dm.var_a),
        ("delta2_S_B".into(), dn.var_b),
        ("delta2_Q_B".into(), dm.var_b),
        ("delta2_S_inf".into(), dn.inf_var),
        ("delta2_Q_inf".into(), dm.inf_var),
    ];
    let mut notes = Vec::new();

    let (numer_n, numer_m) = match variant {
        Prop4Variant::G => {
            let g = measures::g_function(rho)?.value;
            components.push(("g_value".into(), g));
            (g, g)
        }
        Prop4Variant::ConcurrenceRelaxed => {
            let c = measures::concurrence(rho)?.value;
            let mval = 1.0 + 2.0 * c * c;
            components.push(("concurrence".into(), c));
            components.push(("one_plus_2c_sq".into(), mval));
            (mval, mval)
        }
        Prop4Variant::MutualInfo => {
            let mi = measures::mutual_information(rho)?;
            components.push(("mutual_information_bits".into(), mi));
            components.push(("norm4_n".into(), norm4_n));
            components.push(("norm4_m".into(), norm4_m));
            notes.push("operator (spectral) norm used for the observable norms".into());
            notes.push("mutual information in bits".into());
            (2.0 * mi * norm4_n, 2.0 * mi * norm4_m)
        }
        Prop4Variant::EofPure => {
            require_pure(rho, "the eof_pure variant")?;
            let ef = measures::entanglement_of_formation(rho)?;
            components.push(("entanglement_of_formation_bits".into(), ef));
            components.push(("norm4_n".into(), norm4_n));
            components.push(("norm4_m".into(), norm4_m));
            notes.push(
                "on pure states this coincides with the mutual_info variant via I(A:B) = 2E_f"
                    .into(),
            );
            (4.0 * ef * norm4_n, 4.0 * ef * norm4_m)
        }
        Prop4Variant::ThreeObsSum => unreachable!("handled above"),
    };
    let rhs = base - ratio_term(numer_n, &[dn.var_b]) - ratio_term(numer_m, &[dm.var_b]);

    Ok(BoundReport::new(
        format!("prop4_relaxed[{variant}]"),
        BoundKind::Inequality,
        lhs,
        rhs,
        components,
        notes,
    ))
}

fn prop4_three_obs_sum(
    rho: &DensityMatrix,
    n: [f64; 3],
    m: [f64; 3],
    k: [f64; 3],
) -> Result<BoundReport> {
    require_pure(rho, "the three_obs_sum variant")?;
    let bloch = rho.bloch()?;
    let dn = dir_data(rho, &bloch, n)?;
    let dm = dir_data(rho, &bloch, m)?;
    let dk = dir_data(rho, &bloch, k)?;
    let lhs = dn.inf_var + dm.inf_var + dk.inf_var;
    let base = dn.var_a + dm.var_a + dk.var_a;
    let c = measures::concurrence(rho)?.value;
    let skews = [
        skew_on_b(rho, &dn.spec)?,
        skew_on_b(rho, &dm.spec)?,
        skew_on_b(rho, &dk.spec)?,
    ];
    let d = skews.iter().copied().fold(f64::INFINITY, f64::min);
    let rhs = base - ratio_term(3.0 * c * c, &[d]);
    Ok(BoundReport::new(
        "prop4_relaxed[three_obs_sum]",
        BoundKind::Inequality,
        lhs,
        rhs,
        vec![
            ("delta2_S_A".into(), dn.var_a),
            ("delta2_Q_A".into(), dm.var_a),
            ("delta2_K_A".into(), dk.var_a),
            ("delta2_S_inf".into(), dn.inf_var),
            ("delta2_Q_inf".into(), dm.inf_var),
            ("delta2_K_inf".into(), dk.inf_var),
            ("concurrence".into(), c),
            ("skew_B_n".into(), skews[0]),
            ("skew_B_m".into(), skews[1]),
            ("skew_B_k".into(), skews[2]),
            ("d_min".into(), d),
        ],
        Vec::new(),
    ))
}

/// Variants of the inferred-variance product bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Prop5Variant {
    /// `M = C²`; pure states.
    PureConcurrence,
    /// `M = CC_max²`; any state.
    CcMax,
    /// `M = G`; any state.
    G,
    /// Three-observable product with `CC_max²·T₁ + CC_max⁶·T₂`; any state.
    ThreeObsProduct,
    /// Three-observable product with skew-information denominators
    /// `T′₁ = Σ(pair products)/D`, `T′₂ = 1/D³`; any state.
    DiscordProduct,
}

impl FromStr for Prop5Variant {
    type Err = CvurError;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pure_concurrence" => Ok(Self::PureConcurrence),
            "ccmax" => Ok(Self::CcMax),
            "g" => Ok(Self::G),
            "three_obs_product" => Ok(Self::ThreeObsProduct),
            "discord_product" => Ok(Self::DiscordProduct),
            other => Err(parse_error(
                "product-bound",
                other,
                "pure_concurrence, ccmax, g, three_obs_product, discord_product",
            )),
        }
    }
}

impl fmt::Display for Prop5Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::PureConcurrence => "pure_concurrence",
            Self::CcMax => "ccmax",
            Self::G => "g",
            Self::ThreeObsProduct => "three_obs_product",
            Self::DiscordProduct => "discord_product",
        })
    }
}

/// Product bound `Δ²S_inf · Δ²Q_inf ≥ Δ²S_A·Δ²Q_A − M·[Δ²S_A/Δ²S_B +
/// Δ²Q_A/Δ²Q_B]`. Three-observable variants require a third direction `k`
/// and use a triple product on the LHS with the `T₁/T₂` term structure on
/// the RHS; the exact (undropped) product expression is reported as the
/// `exact_product` component for gap analysis.
pub fn prop5_product_bound(
    rho: &DensityMatrix,
    n: [f64; 3],
    m: [f64; 3],
    k: Option<[f64; 3]>,
    variant: Prop5Variant,
) -> Result<BoundReport> {
    let three_obs = matches!(
        variant,
        Prop5Variant::ThreeObsProduct | Prop5Variant::DiscordProduct
    );
    if three_obs {
        let k = k.ok_or_else(|| {
            CvurError::InvalidParameter(format!("variant '{variant}' needs a third direction"))
        })?;
        return prop5_three_obs(rho, n, m, k, variant);
    }
    if k.is_some() {
        return Err(CvurError::InvalidParameter(format!(
            "variant '{variant}' takes exactly two directions"
        )));
    }
    let bloch = rho.bloch()?;
    let dn = dir_data(rho, &bloch, n)?;
    let dm = dir_data(rho, &bloch, m)?;
    let lhs = dn.inf_var * dm.inf_var;
    let base = dn.var_a * dm.var_a;

    let (measure_name, measure) = match variant {
        Prop5Variant::PureConcurrence => {
            require_pure(rho, "the pure_concurrence variant")?;
            let c = measures::concurrence(rho)?.value;
            ("concurrence_sq".to_string(), c * c)
        }
        Prop5Variant::CcMax => {
            let cc = measures::max_connected_correlator(rho)?.value;
            ("ccmax_sq".to_string(), cc * cc)
        }
        Prop5Variant::G => ("g_value".to_string(), measures::g_function(rho)?.value),
        _ => unreachable!("three-observable variants handled above"),
    };

    let term_s = ratio_term(measure * dn.var_a, &[dn.var_b]);
    let term_q = ratio_term(measure * dm.var_a, &[dm.var_b]);
    let rhs = base - term_s - term_q;

    let mut components = vec![
        ("delta2_S_A".into(), dn.var_a),
        ("delta2_Q_A".into(), dm.var_a),
        ("delta2_S_B".into(), dn.var_b),
        ("delta2_Q_B".into(), dm.var_b),
        ("delta2_S_inf".into(), dn.inf_var),
        ("delta2_Q_inf".into(), dm.inf_var),
        ("base".into(), base),
        (measure_name, measure),
    ];
    // Nontriviality threshold: RHS > 0 ⇔ M < Δ²S_A·Δ²Q_A / (Δ²S_A/Δ²S_B +
    // Δ²Q_A/Δ²Q_B); reported so the flag can be cross-checked.
    let ratio_sum = ratio_term(dn.var_a, &[dn.var_b]) + ratio_term(dm.var_a, &[dm.var_b]);
    if ratio_sum.is_finite() && ratio_sum > tol::TAU_DENOM {
        components.push(("nontriviality_threshold".into(), base / ratio_sum));
    }
    Ok(BoundReport::new(
        format!("prop5_product[{variant}]"),
        BoundKind::Inequality,
        lhs,
        rhs,
        components,
        Vec::new(),
    ))
}

fn prop5_three_obs(
    rho: &DensityMatrix,
    n: [f64; 3],
    m: [f64; 3],
    k: [f64; 3],
    variant: Prop5Variant,
) -> Result<BoundReport> {
    let bloch = rho.bloch()?;
    let dn = dir_data(rho, &bloch, n)?;
    let dm = dir_data(rho, &bloch, m)?;
    let dk = dir_data(rho, &bloch, k)?;
    let lhs = dn.inf_var * dm.inf_var * dk.inf_var;
    let (sa, qa, ka) = (dn.var_a, dm.var_a, dk.var_a);
    let base = sa * qa * ka;
    let cc = measures::max_connected_correlator(rho)?.value;
    let m2 = cc * cc;
    let m6 = m2 * m2 * m2;

    let mut components = vec![
        ("delta2_S_A".into(), sa),
        ("delta2_Q_A".into(), qa),
        ("delta2_K_A".into(), ka),
        ("delta2_S_inf".into(), dn.inf_var),
        ("delta2_Q_inf".into(), dm.inf_var),
        ("delta2_K_inf".into(), dk.inf_var),
        ("base".into(), base),
        ("ccmax_sq".into(), m2),
    ];

    let (t1_term, t2_term) = match variant {
        Prop5Variant::ThreeObsProduct => {
            let t1 = ratio_term(m2 * sa * qa, &[dk.var_b])
                + ratio_term(m2 * sa * ka, &[dm.var_b])
                + ratio_term(m2 * qa * ka, &[dn.var_b]);
            let t2 = ratio_term(m6, &[dn.var_b, dm.var_b, dk.var_b]);
            components.push(("delta2_S_B".into(), dn.var_b));
            components.push(("delta2_Q_B".into(), dm.var_b));
            components.push(("delta2_K_B".into(), dk.var_b));
            (t1, t2)
        }
        Prop5Variant::DiscordProduct => {
            let skews = [
                skew_on_b(rho, &dn.spec)?,
                skew_on_b(rho, &dm.spec)?,
                skew_on_b(rho, &dk.spec)?,
            ];
            let d = skews.iter().copied().fold(f64::INFINITY, f64::min);
            let t1 = ratio_term(m2 * (sa * qa + sa * ka + qa * ka), &[d]);
            let t2 = ratio_term(m6, &[d, d, d]);
            components.push(("skew_B_n".into(), skews[0]));
            components.push(("skew_B_m".into(), skews[1]));
            components.push(("skew_B_k".into(), skews[2]));
            components.push(("d_min".into(), d));
            (t1, t2)
        }
        _ => unreachable!("two-observable variants handled by the caller"),
    };
    let rhs = base - t1_term - t2_term;

    // Exact undropped product Π(Δ²X_A − CC(x,x)²/Δ²X_B): equals the LHS by
    // the recipe/closed-form identity; shows what the relaxations gave away.
    let exact = [(&dn, dn.cc), (&dm, dm.cc), (&dk, dk.cc)]
        .iter()
        .map(|(d, cc)| d.var_a - ratio_term(cc * cc, &[d.var_b]))
        .product::<f64>();
    components.push(("exact_product".into(), exact));

    Ok(BoundReport::new(
        format!("prop5_product[{variant}]"),
        BoundKind::Inequality,
        lhs,
        rhs,
        components,
        Vec::new(),
    ))
}

/// Variants of the collective local-uncertainty relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LurVariant {
    /// `RHS = U_A + U_B − 2·CC_max·(list length)`; two-qubit states.
    CcMax,
    /// `RHS = U_A + U_B − 2·C·(list length)`; pure two-qubit states.
    Concurrence,
    /// `RHS = U_A + U_B − 4·√E_f·Σ‖A_i‖‖B_i‖`; pure states
    /// (`E_f` = entanglement entropy there).
    EntanglementEntropy,
    /// `RHS = U_A + U_B − 2·√(2I(A:B))·Σ‖A_i‖‖B_i‖`; any state, bits.
    MutualInfo,
}

impl FromStr for LurVariant {
    type Err = CvurError;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ccmax" => Ok(Self::CcMax),
            "concurrence" => Ok(Self::Concurrence),
            "entanglement_entropy" => Ok(Self::EntanglementEntropy),
            "mutual_info" => Ok(Self::MutualInfo),
            other => Err(parse_error(
                "collective-relation",
                other,
                "ccmax, concurrence, entanglement_entropy, mutual_info",
            )),
        }
    }
}

impl fmt::Display for LurVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::CcMax => "ccmax",
            Self::Concurrence => "concurrence",
            Self::EntanglementEntropy => "entanglement_entropy",
            Self::MutualInfo => "mutual_info",
        })
    }
}

/// Collective local-uncertainty relation
/// `Σ_i Δ²(A_i⊗I + I⊗B_i) ≥ U_A + U_B − correction`.
///
/// `ua`, `ub` are the caller-supplied state-independent local uncertainty
/// bounds (2 each for a qubit Pauli triple, since `Σ_i Δ²σ_i = 3 − |r|² ≥
/// 2`). The report's `entanglement_detected` component flags a violation of
/// the separability form `LHS ≥ U_A + U_B`, which certifies entanglement.
pub fn lur_violation(
    rho: &DensityMatrix,
    obs_a: &[ObservableSpec],
    obs_b: &[ObservableSpec],
    ua: f64,
    ub: f64,
    variant: LurVariant,
) -> Result<BoundReport> {
    if obs_a.is_empty() || obs_a.len() != obs_b.len() {
        return Err(CvurError::InvalidParameter(format!(
            "observable lists must have equal nonzero length, got {} and {}",
            obs_a.len(),
            obs_b.len()
        )));
    }
    for (a, b) in obs_a.iter().zip(obs_b) {
        if a.dim() != rho.dim_a || b.dim() != rho.dim_b {
            return Err(CvurError::InvalidDimensions(
                "collective-relation observables must match the state's factors".into(),
            ));
        }
    }

    let mut lhs = 0.0;
    let mut components = Vec::new();
    let mut sum_norms = 0.0;
    for (i, (a, b)) in obs_a.iter().zip(obs_b).enumerate() {
        let collective = embed_a(&a.matrix, rho.dim_b).add(&embed_b(rho.dim_a, &b.matrix))?;
        let v = variance(rho, &collective)?;
        components.push((format!("delta2_term_{i}"), v));
        lhs += v;
        sum_norms += a.spectral_norm() * b.spectral_norm();
    }
    let count = obs_a.len() as f64;
    let base = ua + ub;
    let mut notes = Vec::new();

    let correction = match variant {
        LurVariant::CcMax => {
            let cc = measures::max_connected_correlator(rho)?.value;
            components.push(("ccmax".into(), cc));
            2.0 * cc * count
        }
        LurVariant::Concurrence => {
            require_pure(rho, "the concurrence variant")?;
            let c = measures::concurrence(rho)?.value;
            components.push(("concurrence".into(), c));
            2.0 * c * count
        }
        LurVariant::EntanglementEntropy => {
            require_pure(rho, "the entanglement_entropy variant")?;
            let e = measures::entanglement_entropy_pure(rho)?;
            components.push(("entanglement_entropy_bits".into(), e));
            notes.push(
                "coefficient 4√E·Σ‖A‖‖B‖ with E = S(ρ_A) in bits (= E_f on pure states); \
                 coincides with the mutual_info variant via I(A:B) = 2E_f"
                    .into(),
            );
            4.0 * e.max(0.0).sqrt() * sum_norms
        }
        LurVariant::MutualInfo => {
            let mi = measures::mutual_information(rho)?;
            components.push(("mutual_information_bits".into(), mi));
            notes.push(
                "coefficient 2√(2I)·Σ‖A‖‖B‖; the √2 factor is required for the bound to \
                 hold on maximally entangled states (singlet Pauli triple: LHS = 0, \
                 I = 2 bits, Σ‖A‖‖B‖ = 3 gives RHS = 4 − 12 = −8 ≤ 0)"
                    .into(),
            );
            2.0 * (2.0 * mi).max(0.0).sqrt() * sum_norms
        }
    };
    let rhs = base - correction;
    let detected = lhs < base - tol::TAU_BOUND;
    components.push(("count".into(), count));
    components.push(("sum_norms".into(), sum_norms));
    components.push(("separability_threshold".into(), base));
    components.push(("entanglement_detected".into(), if detected { 1.0 } else { 0.0 }));

    Ok(BoundReport::new(
        format!("lur_violation[{variant}]"),
        BoundKind::Inequality,
        lhs,
        rhs,
        components,
        notes,
    ))
}

/// Variance and fringe visibility of a unitary on a density-like matrix:
/// `Δ²U = 1 − |Tr(Uρ)|²`, `ν = |Tr(Uρ)|`; `Δ²U + ν² = 1` exactly by
/// construction. Accepts any square unit-trace Hermitian matrix (reduced
/// states included), with `u` unitary to 1e-9.
pub fn unitary_variance(state: &ComplexMatrix, u: &ComplexMatrix) -> Result<(f64, f64)> {
    if !state.is_square() || !u.is_square() || state.rows() != u.rows() {
        return Err(CvurError::InvalidDimensions(
            "state and unitary must be square matrices of the same size".into(),
        ));
    }
    if !state.is_hermitian(tol::TAU_HERM) {
        return Err(CvurError::NonHermitian("state must be Hermitian".into()));
    }
    let tr = state.trace()?.re;
    if (tr - 1.0).abs() > 1e-9 {
        return Err(CvurError::InvalidParameter(format!(
            "state has trace {tr:.12}, expected 1"
        )));
    }
    let uu = u.mul(&u.dagger())?;
    if uu.distance(&ComplexMatrix::identity(u.rows()))? > 1e-9 {
        return Err(CvurError::NonUnitary("operator is not unitary to 1e-9".into()));
    }
    let visibility = u.mul(state)?.trace()?.norm().clamp(0.0, 1.0);
    Ok((1.0 - visibility * visibility, visibility))
}

/// Concurrence-dependent visibility trade-off for two qubits:
/// `ν_U² + ν_V² ≥ 2(1 − C) − Δ²(U⊗I + I⊗V)`, with `ν_U` on `ρ_A` and
/// `ν_V` on `ρ_B`, and `u`, `v` Hermitian unitaries.
///
/// Proven for pure states; the report notes that mixed states can violate
/// it, and evaluating one adds an explicit domain warning instead of an
/// error so the violation itself can be studied.
pub fn visibility_bound(
    rho: &DensityMatrix,
    u: &ComplexMatrix,
    v: &ComplexMatrix,
) -> Result<BoundReport> {
    if rho.dim_a != 2 || rho.dim_b != 2 {
        return Err(CvurError::InvalidDimensions(
            "visibility bound is implemented for two-qubit states".into(),
        ));
    }
    for (label, op) in [("U", u), ("V", v)] {
        if !observables::is_hermitian_unitary(op) {
            return Err(CvurError::NonUnitary(format!(
                "{label} must be a Hermitian unitary (H = H†, H² = I)"
            )));
        }
    }
    let (_, nu_u) = unitary_variance(&rho.reduced_a(), u)?;
    let (_, nu_v) = unitary_variance(&rho.reduced_b(), v)?;
    let lhs = nu_u * nu_u + nu_v * nu_v;
    let c = measures::concurrence(rho)?.value;
    let collective = embed_a(u, 2).add(&embed_b(2, v))?;
    let collective_var = variance(rho, &collective)?;
    let rhs = 2.0 * (1.0 - c) - collective_var;

    let mut notes =
        vec!["Δ²(U+V) read as the variance of U⊗I + I⊗V on the joint state".to_string()];
    if !rho.is_pure() {
        notes.push(
            "state is mixed: the trade-off is proven for pure states and mixed states can \
             violate it (e.g. the p = 0.5 Werner state with U = V = σx)"
                .into(),
        );
    }
    Ok(BoundReport::new(
        "visibility_bound",
        BoundKind::Inequality,
        lhs,
        rhs,
        vec![
            ("nu_U".into(), nu_u),
            ("nu_V".into(), nu_v),
            ("concurrence".into(), c),
            ("collective_variance".into(), collective_var),
            ("purity".into(), rho.purity()),
        ],
        notes,
    ))
}

/// Mutual-information floor `I(A:B) ≥ CC(M_A, M_B)² / (2‖M_A‖²‖M_B‖²)`
/// in bits, for arbitrary local observables.
pub fn eq8_mutual_info_bound(
    rho: &DensityMatrix,
    a: &ObservableSpec,
    b: &ObservableSpec,
) -> Result<BoundReport> {
    let cc = measures::connected_correlator(rho, &a.matrix, &b.matrix)?;
    let na = a.spectral_norm();
    let nb = b.spectral_norm();
    if na <= tol::TAU_DENOM || nb <= tol::TAU_DENOM {
        return Err(CvurError::InvalidParameter(
            "observables must have nonzero norm".into(),
        ));
    }
    let lhs = measures::mutual_information(rho)?;
    let rhs = cc * cc / (2.0 * na * na * nb * nb);
    Ok(BoundReport::new(
        "eq8_mutual_info",
        BoundKind::Inequality,
        lhs,
        rhs,
        vec![
            ("connected_correlator".into(), cc),
            ("norm_A".into(), na),
            ("norm_B".into(), nb),
        ],
        vec![
            "operator (spectral) norm used for the observable norms".into(),
            "mutual information in bits (the bound also holds in nats and is weaker there)"
                .into(),
        ],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Complex64;
    use crate::observables::{pauli, pauli_from_vec};
    use crate::sampling::SeededRng;
    use crate::states;

    const X: [f64; 3] = [1.0, 0.0, 0.0];
    const Y: [f64; 3] = [0.0, 1.0, 0.0];
    const Z: [f64; 3] = [0.0, 0.0, 1.0];

    fn pauli_triple() -> Vec<ObservableSpec> {
        vec![
            pauli_from_vec(X).unwrap(),
            pauli_from_vec(Y).unwrap(),
            pauli_from_vec(Z).unwrap(),
        ]
    }

    #[test]
    fn prop2_concurrence_saturates_on_schmidt_family() {
        for i in 0..=50 {
            let theta = std::f64::consts::FRAC_PI_2 * i as f64 / 50.0;
            let rho = states::schmidt_pure(theta).unwrap();
            let report = prop2_sum_bound(&rho, X, Y, Prop2Variant::Concurrence).unwrap();
            let c2 = (2.0 * theta).sin().powi(2);
            assert!(
                (report.lhs - (2.0 - 2.0 * c2)).abs() < 1e-10,
                "θ = {theta}: lhs {}",
                report.lhs
            );
            assert!(report.gap.abs() < 1e-10, "θ = {theta}: gap {}", report.gap);
            assert!(report.satisfied);
        }
    }

    #[test]
    fn prop2_ccmax_saturates_on_werner_line() {
        for i in 0..=20 {
            let p = i as f64 / 20.0;
            let rho = states::werner(p).unwrap();
            let report = prop2_sum_bound(&rho, X, Y, Prop2Variant::CcMax).unwrap();
            let expect = 2.0 - 2.0 * p * p;
            assert!((report.lhs - expect).abs() < 1e-10, "p = {p}");
            assert!((report.rhs - expect).abs() < 1e-10, "p = {p}");
            assert!(report.satisfied);
        }
    }

    #[test]
    fn prop2_pure_variants_reject_mixed_states() {
        let rho = states::werner(0.5).unwrap();
        for variant in [
            Prop2Variant::Concurrence,
            Prop2Variant::Busch,
            Prop2Variant::Covariance,
        ] {
            assert!(
                matches!(
                    prop2_sum_bound(&rho, X, Y, variant),
                    Err(CvurError::InvalidParameter(_))
                ),
                "{variant}"
            );
        }
        assert!(prop2_sum_bound(&rho, X, Y, Prop2Variant::CcMax).is_ok());
    }

    #[test]
    fn prop2_all_variants_hold_on_random_pure_states() {
        let mut rng = SeededRng::new(41);
        for seed in 0..60u64 {
            let rho = states::random_pure(2, 2, seed).unwrap();
            let n = rng.unit_vec3();
            let m = rng.unit_vec3();
            for variant in [
                Prop2Variant::Concurrence,
                Prop2Variant::Busch,
                Prop2Variant::Covariance,
                Prop2Variant::CcMax,
            ] {
                let report = prop2_sum_bound(&rho, n, m, variant).unwrap();
                assert!(report.satisfied, "seed {seed} {variant}: gap {}", report.gap);
            }
        }
    }

    #[test]
    fn prop2_covariance_equals_concurrence_variant_on_pure_states() {
        for seed in 0..10u64 {
            let rho = states::random_pure(2, 2, seed).unwrap();
            let a = prop2_sum_bound(&rho, X, Y, Prop2Variant::Concurrence).unwrap();
            let b = prop2_sum_bound(&rho, X, Y, Prop2Variant::Covariance).unwrap();
            assert!((a.rhs - b.rhs).abs() < 1e-9, "seed {seed}");
        }
    }

    #[test]
    fn prop2_ccmax_is_a_relaxation_of_the_exact_correlator_form() {
        // RHS(ccmax) ≤ RHS(exact correlators) because CC_max dominates every
        // same-direction correlator.
        let mut rng = SeededRng::new(17);
        for seed in 0..40u64 {
            let rho = states::random_mixed(2, 2, 4, seed).unwrap();
            let bloch = rho.bloch().unwrap();
            let n = rng.unit_vec3();
            let m = rng.unit_vec3();
            let report = prop2_sum_bound(&rho, n, m, Prop2Variant::CcMax).unwrap();
            let dn = super::dir_data(&rho, &bloch, n).unwrap();
            let dm = super::dir_data(&rho, &bloch, m).unwrap();
            let exact_rhs = dn.var_a + dm.var_a
                - ratio_term(dn.cc * dn.cc, &[dn.var_b])
                - ratio_term(dm.cc * dm.cc, &[dm.var_b]);
            assert!(report.rhs <= exact_rhs + 1e-10, "seed {seed}");
        }
    }

    #[test]
    fn prop3_product_state_has_zero_gap() {
        let rho = states::schmidt_pure(0.0).unwrap();
        for variant in [Prop3Variant::PerObservable, Prop3Variant::SingleD] {
            let report = prop3_discord_bound(&rho, X, Y, variant).unwrap();
            assert!(report.gap.abs() < 1e-10, "{variant}: gap {}", report.gap);
            assert!((report.rhs - 2.0).abs() < 1e-10);
            assert!(report.satisfied);
        }
    }

    #[test]
    fn prop3_holds_on_random_mixed_states_and_single_d_is_weaker() {
        let mut rng = SeededRng::new(23);
        for seed in 0..60u64 {
            let rank = 1 + (seed % 4) as usize;
            let rho = states::random_mixed(2, 2, rank, seed).unwrap();
            let n = rng.unit_vec3();
            let m = rng.unit_vec3();
            let per = prop3_discord_bound(&rho, n, m, Prop3Variant::PerObservable).unwrap();
            let single = prop3_discord_bound(&rho, n, m, Prop3Variant::SingleD).unwrap();
            assert!(per.satisfied, "seed {seed}: per gap {}", per.gap);
            assert!(single.satisfied, "seed {seed}: single gap {}", single.gap);
            assert!(single.rhs <= per.rhs + 1e-10, "seed {seed}");
        }
    }

    #[test]
    fn prop3_werner_has_positive_gap_and_logged_terms() {
        let rho = states::werner(0.8).unwrap();
        let report = prop3_discord_bound(&rho, X, Y, Prop3Variant::PerObservable).unwrap();
        assert!(report.satisfied);
        assert!(report.gap > 0.0);
        assert!(report.component("skew_B_n").unwrap() > 0.0);
        assert!((report.component("cc_nn").unwrap() + 0.8).abs() < 1e-10);
    }

    #[test]
    fn prop3_degenerate_skew_yields_trivial_minus_infinity() {
        // Classically correlated diag(1/2, 0, 0, 1/2): σz is a conserved
        // quantity (zero skew) yet carries full correlation, so the
        // σz-conditioned term blows up and the bound degenerates.
        let mut m = ComplexMatrix::zeros(4, 4);
        m.set(0, 0, Complex64::new(0.5, 0.0));
        m.set(3, 3, Complex64::new(0.5, 0.0));
        let rho = DensityMatrix::new(m, 2, 2).unwrap();
        let report = prop3_discord_bound(&rho, Z, X, Prop3Variant::PerObservable).unwrap();
        assert_eq!(report.rhs, f64::NEG_INFINITY);
        assert!(report.satisfied);
        assert!(!report.nontrivial);
        assert!(report.to_json().contains("\"-inf\""));
        assert!(report.csv_row().contains("-inf"));
    }

    #[test]
    fn prop4_werner_g_variant_matches_hand_values() {
        for &p in &[0.0, 0.3, 0.6, 1.0] {
            let rho = states::werner(p).unwrap();
            let report = prop4_g_bound(&rho, X, Y, None, Prop4Variant::G).unwrap();
            assert!((report.lhs - (2.0 - 2.0 * p * p)).abs() < 1e-10, "p = {p}");
            assert!((report.component("delta2_S_B").unwrap() - 1.0).abs() < 1e-10);
            assert!((report.component("g_value").unwrap() - 3.0 * p * p).abs() < 1e-10);
            assert!((report.rhs - (2.0 - 6.0 * p * p)).abs() < 1e-10, "p = {p}");
            assert!(report.satisfied);
        }
    }

    #[test]
    fn prop4_two_observable_variants_hold_on_random_states() {
        let mut rng = SeededRng::new(29);
        for seed in 0..60u64 {
            let rho = states::random_mixed(2, 2, 1 + (seed % 4) as usize, seed).unwrap();
            let n = rng.unit_vec3();
            let m = rng.unit_vec3();
            for variant in [
                Prop4Variant::G,
                Prop4Variant::ConcurrenceRelaxed,
                Prop4Variant::MutualInfo,
            ] {
                let report = prop4_g_bound(&rho, n, m, None, variant).unwrap();
                assert!(report.satisfied, "seed {seed} {variant}: gap {}", report.gap);
            }
        }
    }

    #[test]
    fn prop4_eof_pure_equals_mutual_info_variant_on_pure_states() {
        for seed in 0..15u64 {
            let rho = states::random_pure(2, 2, seed).unwrap();
            let ef = prop4_g_bound(&rho, X, Y, None, Prop4Variant::EofPure).unwrap();
            let mi = prop4_g_bound(&rho, X, Y, None, Prop4Variant::MutualInfo).unwrap();
            assert!((ef.rhs - mi.rhs).abs() < 1e-8, "seed {seed}: {} vs {}", ef.rhs, mi.rhs);
            assert!(ef.satisfied);
        }
        let mixed = states::werner(0.5).unwrap();
        assert!(prop4_g_bound(&mixed, X, Y, None, Prop4Variant::EofPure).is_err());
    }

    #[test]
    fn prop4_three_obs_sum_holds_on_pure_states() {
        let mut rng = SeededRng::new(31);
        for seed in 0..40u64 {
            let rho = states::random_pure(2, 2, seed).unwrap();
            let (n, m, k) = (rng.unit_vec3(), rng.unit_vec3(), rng.unit_vec3());
            let report =
                prop4_g_bound(&rho, n, m, Some(k), Prop4Variant::ThreeObsSum).unwrap();
            assert!(report.satisfied, "seed {seed}: gap {}", report.gap);
        }
        // Direction-count contract.
        let rho = states::random_pure(2, 2, 0).unwrap();
        assert!(prop4_g_bound(&rho, X, Y, None, Prop4Variant::ThreeObsSum).is_err());
        assert!(prop4_g_bound(&rho, X, Y, Some(Z), Prop4Variant::G).is_err());
    }

    #[test]
    fn prop5_pure_concurrence_gap_is_c_fourth_on_schmidt_grid() {
        for i in 0..=50 {
            let theta = std::f64::consts::FRAC_PI_2 * i as f64 / 50.0;
            let rho = states::schmidt_pure(theta).unwrap();
            let report =
                prop5_product_bound(&rho, X, Y, None, Prop5Variant::PureConcurrence).unwrap();
            let c2 = (2.0 * theta).sin().powi(2);
            assert!((report.lhs - (1.0 - c2) * (1.0 - c2)).abs() < 1e-10, "θ = {theta}");
            assert!((report.rhs - (1.0 - 2.0 * c2)).abs() < 1e-10, "θ = {theta}");
            assert!((report.gap - c2 * c2).abs() < 1e-10, "θ = {theta}");
            assert!(report.satisfied);
        }
    }

    #[test]
    fn prop5_mixed_variants_hold_on_random_states() {
        let mut rng = SeededRng::new(37);
        for seed in 0..60u64 {
            let rho = states::random_mixed(2, 2, 1 + (seed % 4) as usize, seed).unwrap();
            let n = rng.unit_vec3();
            let m = rng.unit_vec3();
            for variant in [Prop5Variant::CcMax, Prop5Variant::G] {
                let report = prop5_product_bound(&rho, n, m, None, variant).unwrap();
                assert!(report.satisfied, "seed {seed} {variant}: gap {}", report.gap);
            }
        }
        let mixed = states::werner(0.5).unwrap();
        assert!(matches!(
            prop5_product_bound(&mixed, X, Y, None, Prop5Variant::PureConcurrence),
            Err(CvurError::InvalidParameter(_))
        ));
    }

    #[test]
    fn prop5_three_observable_variants_hold_and_report_exact_product() {
        let mut rng = SeededRng::new(43);
        for seed in 0..40u64 {
            let rho = states::random_mixed(2, 2, 1 + (seed % 4) as usize, seed).unwrap();
            let (n, m, k) = (rng.unit_vec3(), rng.unit_vec3(), rng.unit_vec3());
            for variant in [Prop5Variant::ThreeObsProduct, Prop5Variant::DiscordProduct] {
                let report = prop5_product_bound(&rho, n, m, Some(k), variant).unwrap();
                assert!(report.satisfied, "seed {seed} {variant}: gap {}", report.gap);
                let exact = report.component("exact_product").unwrap();
                if exact.is_finite() {
                    assert!(
                        (exact - report.lhs).abs() < 1e-9,
                        "seed {seed} {variant}: exact {} vs lhs {}",
                        exact,
                        report.lhs
                    );
                }
            }
        }
        let rho = states::random_mixed(2, 2, 4, 0).unwrap();
        assert!(
            prop5_product_bound(&rho, X, Y, None, Prop5Variant::ThreeObsProduct).is_err()
        );
    }

    #[test]
    fn lur_singlet_pauli_triple_detects_entanglement() {
        let singlet = states::werner(1.0).unwrap();
        let triple = pauli_triple();
        let report =
            lur_violation(&singlet, &triple, &triple, 2.0, 2.0, LurVariant::CcMax).unwrap();
        assert!(report.lhs.abs() < 1e-10, "lhs {}", report.lhs);
        assert!((report.component("separability_threshold").unwrap() - 4.0).abs() < 1e-12);
        assert_eq!(report.component("entanglement_detected"), Some(1.0));
        // RHS = 4 − 2·1·3 = −2 and the bound itself still holds.
        assert!((report.rhs + 2.0).abs() < 1e-10);
        assert!(report.satisfied);
    }

    #[test]
    fn lur_variants_hold_on_their_domains() {
        let triple = pauli_triple();
        let mut detections = 0;
        for seed in 0..40u64 {
            let rho = states::random_mixed(2, 2, 1 + (seed % 4) as usize, seed).unwrap();
            for variant in [LurVariant::CcMax, LurVariant::MutualInfo] {
                let report =
                    lur_violation(&rho, &triple, &triple, 2.0, 2.0, variant).unwrap();
                assert!(report.satisfied, "seed {seed} {variant}: gap {}", report.gap);
            }
            let pure = states::random_pure(2, 2, seed).unwrap();
            for variant in [LurVariant::Concurrence, LurVariant::EntanglementEntropy] {
                let report =
                    lur_violation(&pure, &triple, &triple, 2.0, 2.0, variant).unwrap();
                assert!(report.satisfied, "seed {seed} {variant}: gap {}", report.gap);
                if report.component("entanglement_detected") == Some(1.0) {
                    detections += 1;
                }
            }
        }
        // Haar-random pure states are almost surely entangled enough to trip
        // the separability test at least once across the sweep.
        assert!(detections > 0);
    }

    #[test]
    fn lur_separable_states_never_violate_separability() {
        let triple = pauli_triple();
        for seed in 0..50u64 {
            let rho = states::random_separable(1 + (seed % 4) as usize, seed).unwrap();
            let report =
                lur_violation(&rho, &triple, &triple, 2.0, 2.0, LurVariant::CcMax).unwrap();
            assert_eq!(
                report.component("entanglement_detected"),
                Some(0.0),
                "seed {seed}: lhs {}",
                report.lhs
            );
        }
    }

    #[test]
    fn lur_list_contracts() {
        let rho = states::werner(0.5).unwrap();
        let triple = pauli_triple();
        let pair = vec![pauli_from_vec(X).unwrap(), pauli_from_vec(Y).unwrap()];
        assert!(lur_violation(&rho, &triple, &pair, 2.0, 2.0, LurVariant::CcMax).is_err());
        assert!(lur_violation(&rho, &[], &[], 2.0, 2.0, LurVariant::CcMax).is_err());
        assert!(matches!(
            lur_violation(&rho, &triple, &triple, 2.0, 2.0, LurVariant::Concurrence),
            Err(CvurError::InvalidParameter(_))
        ));
    }

    #[test]
    fn unitary_variance_examples() {
        let half = ComplexMatrix::identity(2).scale(Complex64::new(0.5, 0.0));
        let (var, vis) = unitary_variance(&half, &ComplexMatrix::identity(2)).unwrap();
        assert!(var.abs() < 1e-15 && (vis - 1.0).abs() < 1e-15);
        let (var, vis) = unitary_variance(&half, &pauli(0)).unwrap();
        assert!((var - 1.0).abs() < 1e-15 && vis.abs() < 1e-15);
        // |+⟩⟨+| is a σx eigenstate: full visibility.
        let mut plus = ComplexMatrix::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                plus.set(i, j, Complex64::new(0.5, 0.0));
            }
        }
        let (var, vis) = unitary_variance(&plus, &pauli(0)).unwrap();
        assert!(var.abs() < 1e-12 && (vis - 1.0).abs() < 1e-12);
        // Identity holds by construction.
        let (var, vis) = unitary_variance(&plus, &pauli(2)).unwrap();
        assert!((var + vis * vis - 1.0).abs() < 1e-15);
        // Non-unitary rejection.
        let half_x = pauli(0).scale(Complex64::new(0.5, 0.0));
        assert!(matches!(
            unitary_variance(&plus, &half_x),
            Err(CvurError::NonUnitary(_))
        ));
    }

    #[test]
    fn visibility_bound_bell_state_and_saturation() {
        // |Φ⁺⟩ with U = V = σx: LHS = 0, RHS = 2(1−1) − 4 = −4.
        let bell = states::schmidt_pure(std::f64::consts::FRAC_PI_4).unwrap();
        let report = visibility_bound(&bell, &pauli(0), &pauli(0)).unwrap();
        assert!(report.lhs.abs() < 1e-12);
        assert!((report.rhs + 4.0).abs() < 1e-10);
        assert!(report.satisfied);
        // |0⟩|0⟩ with σz, σz saturates to machine precision.
        let product = states::schmidt_pure(0.0).unwrap();
        let report = visibility_bound(&product, &pauli(2), &pauli(2)).unwrap();
        assert!((report.lhs - 2.0).abs() < 1e-12);
        assert!(report.gap.abs() < 1e-12);
    }

    #[test]
    fn visibility_bound_holds_on_random_pure_states() {
        let mut rng = SeededRng::new(47);
        for seed in 0..60u64 {
            let rho = states::random_pure(2, 2, seed).unwrap();
            let u = crate::observables::pauli_combination(rng.unit_vec3());
            let v = crate::observables::pauli_combination(rng.unit_vec3());
            let report = visibility_bound(&rho, &u, &v).unwrap();
            assert!(report.satisfied, "seed {seed}: gap {}", report.gap);
        }
    }

    #[test]
    fn visibility_bound_reports_the_known_mixed_violation() {
        let rho = states::werner(0.5).unwrap();
        let report = visibility_bound(&rho, &pauli(0), &pauli(0)).unwrap();
        assert!(!report.satisfied);
        assert!((report.lhs - 0.0).abs() < 1e-12);
        assert!((report.rhs - 0.5).abs() < 1e-10);
        assert!(report.notes.iter().any(|n| n.contains("mixed")));
        // Non-Hermitian-unitary rejection: phase gate diag(1, i).
        let mut phase = ComplexMatrix::zeros(2, 2);
        phase.set(0, 0, Complex64::new(1.0, 0.0));
        phase.set(1, 1, Complex64::new(0.0, 1.0));
        assert!(matches!(
            visibility_bound(&rho, &phase, &pauli(0)),
            Err(CvurError::NonUnitary(_))
        ));
    }

    #[test]
    fn eq8_holds_on_random_states_and_product_states() {
        let mut rng = SeededRng::new(53);
        for seed in 0..60u64 {
            let rho = states::random_mixed(2, 2, 1 + (seed % 4) as usize, seed).unwrap();
            let a = pauli_from_vec(rng.unit_vec3()).unwrap();
            let b = pauli_from_vec(rng.unit_vec3()).unwrap();
            let report = eq8_mutual_info_bound(&rho, &a, &b).unwrap();
            assert!(report.satisfied, "seed {seed}: gap {}", report.gap);
        }
        let product = states::schmidt_pure(0.0).unwrap();
        let report = eq8_mutual_info_bound(
            &product,
            &pauli_from_vec(X).unwrap(),
            &pauli_from_vec(Y).unwrap(),
        )
        .unwrap();
        assert!(report.rhs.abs() < 1e-12);
        assert!(report.satisfied);
    }

    #[test]
    fn bound_report_flags_and_overrides() {
        let r = BoundReport::new("t", BoundKind::Inequality, 1.0, 2.0, vec![], vec![]);
        assert!(!r.satisfied);
        assert!((r.gap + 1.0).abs() < 1e-15);
        assert!(r.nontrivial);
        assert!(r.satisfied_with(1.5));
        let id = BoundReport::new("t", BoundKind::Identity, 1.0, 1.0 + 1e-12, vec![], vec![]);
        assert!(id.satisfied);
        assert!(!id.satisfied_with(1e-13));
        let trivial = BoundReport::new("t", BoundKind::Inequality, 0.5, -3.0, vec![], vec![]);
        assert!(trivial.satisfied);
        assert!(!trivial.nontrivial);
    }

    #[test]
    fn variant_parsing_round_trips() {
        assert_eq!("ccmax".parse::<Prop2Variant>().unwrap(), Prop2Variant::CcMax);
        assert_eq!(
            "per_observable".parse::<Prop3Variant>().unwrap(),
            Prop3Variant::PerObservable
        );
        assert_eq!(
            "three_obs_sum".parse::<Prop4Variant>().unwrap(),
            Prop4Variant::ThreeObsSum
        );
        assert_eq!(
            "discord_product".parse::<Prop5Variant>().unwrap(),
            Prop5Variant::DiscordProduct
        );
        assert_eq!(
            "mutual_info".parse::<LurVariant>().unwrap(),
            LurVariant::MutualInfo
        );
        assert!("nope".parse::<Prop2Variant>().is_err());
        assert!("Single_D".parse::<Prop3Variant>().is_ok());
    }

    #[test]
    fn csv_and_json_formatting() {
        let r = BoundReport::new(
            "demo",
            BoundKind::Inequality,
            1.5,
            0.25,
            vec![("alpha".into(), 0.5)],
            vec!["a note".into()],
        );
        let row = r.csv_row();
        assert!(row.starts_with("demo,inequality,"));
        assert!(row.contains("1.5000000000000000e0"));
        let json = r.to_json();
        assert!(json.contains("\"name\":\"demo\""));
        assert!(json.contains("\"alpha\""));
        assert!(json.contains("\"a note\""));
        assert!(json.contains("\"satisfied\":true"));
    }
}
