//! Aggregated analysis reports and the robust-parabolic-curve bound.
//!
//! For a map `f` tangent to the identity with isolated fixed point and
//! non-dicritical at the origin, the number of robust parabolic curves is
//! bounded by `(μ(f)+1)·(η(f)² − η(f))`, where `μ` is the local
//! multiplicity of the fixed point and `η` the larger displacement order.
//! Each isolated separatrix contributes at least one parabolic curve, so
//! the isolated-branch count is a lower estimate. A dicritical singularity
//! instead carries infinitely many such curves, which the report states as
//! a diagnosis rather than a number.

use crate::blowup::{dicritical_field, dicritical_map, exp_pullback_check, BlowupChart};
use crate::error::{Error, Result};
use crate::intersection::{milnor_of_map, Multiplicity};
use crate::parse::ParsedInput;
use crate::puiseux::PuiseuxBranch;
use crate::separatrix::{restricted_exponent, separatrices, PetalReport, SeparatrixSet};
use crate::vector_field::{exp_flow, log_map, Orders, TangentMap, VectorField};
use serde_json::{json, Value};
use std::fmt;

/// Upper estimate on the number of robust parabolic curves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RpBound {
    /// `(μ+1)(η²−η)` for a non-dicritical map with isolated fixed point.
    Bound { mu: u64, eta: usize, bound: u64 },
    /// Dicritical singularity: infinitely many robust parabolic curves.
    DicriticalInfinitelyMany,
}

impl fmt::Display for RpBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RpBound::Bound { mu, eta, bound } => {
                write!(f, "(mu+1)(eta^2-eta) = ({}+1)({}^2-{}) = {}", mu, eta, eta, bound)
            }
            RpBound::DicriticalInfinitelyMany => {
                write!(f, "dicritical: infinitely many robust parabolic curves")
            }
        }
    }
}

/// The bound `(μ(f)+1)(η(f)²−η(f))` on robust parabolic curves, or the
/// dicritical diagnosis. Errors when the fixed-point multiplicity is not
/// finite (a curve of fixed points) for a non-dicritical input.
pub fn rp_curve_bound(f: &TangentMap) -> Result<RpBound> {
    if dicritical_map(f)? {
        return Ok(RpBound::DicriticalInfinitelyMany);
    }
    let mu = match milnor_of_map(f)? {
        Multiplicity::Finite(m) => m,
        Multiplicity::Infinite => {
            return Err(Error::domain(
                "rp_curve_bound",
                "the fixed-point set contains a curve (infinite local multiplicity); no finite bound applies",
            ));
        }
    };
    let orders = f.orders()?;
    let eta = orders.eta.ok_or_else(|| {
        Error::domain(
            "rp_curve_bound",
            "a displacement component vanishes identically; the tangency order eta is undefined",
        )
    })?;
    let e = eta as u64;
    Ok(RpBound::Bound {
        mu,
        eta,
        bound: (mu + 1) * (e * e - e),
    })
}

/// Everything the toolkit can say about one input, in one structure.
#[derive(Debug, Clone)]
pub struct Report {
    pub input_kind: &'static str,
    /// Canonical echo of the analyzed object.
    pub input: String,
    pub truncation_order: usize,
    pub branch_depth: usize,
    pub orders: Orders,
    /// Local multiplicity of the fixed point of the time-one map; `None`
    /// when it could not be certified at this truncation order.
    pub milnor: Option<Multiplicity>,
    pub dicritical_field: bool,
    pub dicritical_map: bool,
    pub dicritical_agree: bool,
    pub separatrices: SeparatrixSet,
    pub petals: Vec<PetalReport>,
    /// One robust parabolic curve per isolated separatrix.
    pub rp_lower_count: usize,
    pub bound: RpBound,
    /// `lower ≤ bound` when both are finite.
    pub lower_within_bound: Option<bool>,
    pub warnings: Vec<String>,
}

/// Run the full analysis pipeline on a parsed input.
pub fn rp_report(input: &ParsedInput, depth: usize) -> Result<Report> {
    let (x, f, input_kind): (VectorField, TangentMap, &'static str) = match input {
        ParsedInput::Field(x) => {
            if x.order().unwrap_or(0) < 2 {
                return Err(Error::domain(
                    "rp_report",
                    "not a singular field of order >= 2 (the time-one map needs a vanishing linear part)",
                ));
            }
            (x.clone(), exp_flow(x)?, "field")
        }
        ParsedInput::Map(f) => (log_map(f)?, f.clone(), "map"),
    };
    let echo = match input {
        ParsedInput::Field(x) => x.render_with("x", "y"),
        ParsedInput::Map(f) => f.render_with("x", "y"),
    };
    let mut warnings: Vec<String> = Vec::new();
    let orders = f.orders()?;
    let milnor = match milnor_of_map(&f) {
        Ok(m) => Some(m),
        Err(Error::Uncertified { message, .. }) => {
            warnings.push(format!("local multiplicity uncertified: {message}"));
            None
        }
        Err(e) => return Err(e),
    };
    let dic_field = dicritical_field(&x)?;
    let dic_map = dicritical_map(&f)?;
    let seps = separatrices(&x, depth)?;
    warnings.extend(seps.warnings.iter().cloned());
    if !seps.families.is_empty() {
        warnings.push(
            "hypothesis check: separatrix family present; the finite bound counts only isolated branches"
                .to_string(),
        );
    }
    let mut petals = Vec::new();
    for br in seps.isolated.iter() {
        match restricted_exponent(&x, br) {
            Ok(rep) => petals.push(rep),
            Err(e) => warnings.push(format!("petal analysis skipped for {}: {}", br, e)),
        }
    }
    let bound = rp_curve_bound(&f)?;
    let rp_lower_count = seps.isolated_count();
    let lower_within_bound = match &bound {
        RpBound::Bound { bound, .. } => Some((rp_lower_count as u64) <= *bound),
        RpBound::DicriticalInfinitelyMany => None,
    };
    Ok(Report {
        input_kind,
        input: echo,
        truncation_order: x.trunc(),
        branch_depth: depth,
        orders,
        milnor,
        dicritical_field: dic_field,
        dicritical_map: dic_map,
        dicritical_agree: dic_field == dic_map,
        separatrices: seps,
        petals,
        rp_lower_count,
        bound,
        lower_within_bound,
        warnings,
    })
}

fn opt_usize(v: Option<usize>) -> Value {
    match v {
        Some(n) => json!(n),
        None => Value::Null,
    }
}

fn multiplicity_json(m: &Multiplicity) -> Value {
    match m {
        Multiplicity::Finite(n) => json!(n),
        Multiplicity::Infinite => json!("infinite"),
    }
}

fn branch_json(br: &PuiseuxBranch) -> Value {
    json!({
        "orientation": match br.orientation {
            crate::puiseux::Orientation::YofX => "y_of_x",
            crate::puiseux::Orientation::XofY => "x_of_y",
        },
        "q": br.q,
        "p": br.p,
        "phi": br.phi.render_with("z"),
        "exact": br.phi.is_exact(),
        "family_parameter": opt_usize(br.family_parameter),
        "expansion": br.describe(),
    })
}

impl Orders {
    pub fn to_json(&self) -> Value {
        json!({
            "nu1": opt_usize(self.nu1),
            "nu2": opt_usize(self.nu2),
            "nu": self.nu,
            "eta": opt_usize(self.eta),
        })
    }

    pub fn to_text(&self) -> String {
        let show = |v: Option<usize>| v.map_or("-".to_string(), |n| n.to_string());
        format!(
            "nu1 = {}, nu2 = {}, nu = {}, eta = {}",
            show(self.nu1),
            show(self.nu2),
            self.nu,
            show(self.eta)
        )
    }
}

impl SeparatrixSet {
    pub fn to_json(&self) -> Value {
        json!({
            "isolated": self.isolated.iter().map(branch_json).collect::<Vec<_>>(),
            "families": self.families.iter().map(branch_json).collect::<Vec<_>>(),
            "includes_x_axis": self.includes_x_axis,
            "includes_y_axis": self.includes_y_axis,
            "isolated_count": self.isolated_count(),
            "warnings": self.warnings,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "separatrices: {} isolated, {} famil{} (x-axis: {}, y-axis: {})\n",
            self.isolated_count(),
            self.families.len(),
            if self.families.len() == 1 { "y" } else { "ies" },
            if self.includes_x_axis { "yes" } else { "no" },
            if self.includes_y_axis { "yes" } else { "no" }
        );
        for (k, br) in self.isolated.iter().enumerate() {
            out.push_str(&format!("  [{}] {}\n", k + 1, br.describe()));
        }
        for br in self.families.iter() {
            out.push_str(&format!("  [family] {}\n", br.describe()));
        }
        for w in self.warnings.iter() {
            out.push_str(&format!("  warning: {w}\n"));
        }
        out
    }
}

impl PetalReport {
    pub fn to_json(&self) -> Value {
        json!({
            "branch": self.branch.describe(),
            "h": self.h,
            "petal_count": self.petal_count,
            "leading_coefficient": self.leading_coefficient.render(),
            "exponent_estimate": self.exponent_estimate,
        })
    }

    pub fn to_line(&self) -> String {
        format!(
            "{}: h = {}, petals = {}, leading coefficient {}, order estimate {}",
            self.branch.describe(),
            self.h,
            self.petal_count,
            self.leading_coefficient.render(),
            self.exponent_estimate
        )
    }
}

impl RpBound {
    pub fn to_json(&self) -> Value {
        match self {
            RpBound::Bound { mu, eta, bound } => json!({
                "mu": mu,
                "eta": eta,
                "value": bound,
            }),
            RpBound::DicriticalInfinitelyMany => json!("dicritical: infinitely many"),
        }
    }
}

impl Report {
    pub fn to_json(&self) -> Value {
        json!({
            "input": {
                "kind": self.input_kind,
                "text": self.input,
                "truncation_order": self.truncation_order,
                "branch_depth": self.branch_depth,
            },
            "orders": self.orders.to_json(),
            "milnor": match &self.milnor {
                Some(m) => multiplicity_json(m),
                None => Value::Null,
            },
            "dicritical": {
                "field": self.dicritical_field,
                "map": self.dicritical_map,
                "agree": self.dicritical_agree,
            },
            "separatrices": self.separatrices.to_json(),
            "petals": self.petals.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
            "rp_curves": {
                "lower_count": self.rp_lower_count,
                "bound": self.bound.to_json(),
                "lower_within_bound": match self.lower_within_bound {
                    Some(b) => json!(b),
                    None => Value::Null,
                },
            },
            "warnings": self.warnings,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let push = |out: &mut String, line: String| {
            out.push_str(&line);
            out.push('\n');
        };
        push(&mut out, format!("input ({}): {}", self.input_kind, self.input));
        push(
            &mut out,
            format!(
                "truncation order: {}, branch depth: {}",
                self.truncation_order, self.branch_depth
            ),
        );
        push(&mut out, format!("orders: {}", self.orders.to_text()));
        push(
            &mut out,
            format!(
                "local multiplicity: {}",
                match &self.milnor {
                    Some(m) => m.to_string(),
                    None => "uncertified".to_string(),
                }
            ),
        );
        push(
            &mut out,
            format!(
                "dicritical: field {}, map {}{}",
                if self.dicritical_field { "yes" } else { "no" },
                if self.dicritical_map { "yes" } else { "no" },
                if self.dicritical_agree { " (verdicts agree)" } else { " (VERDICTS DISAGREE)" }
            ),
        );
        push(
            &mut out,
            format!(
                "separatrices: {} isolated, {} famil{} (x-axis: {}, y-axis: {})",
                self.separatrices.isolated_count(),
                self.separatrices.families.len(),
                if self.separatrices.families.len() == 1 { "y" } else { "ies" },
                if self.separatrices.includes_x_axis { "yes" } else { "no" },
                if self.separatrices.includes_y_axis { "yes" } else { "no" }
            ),
        );
        for (k, br) in self.separatrices.isolated.iter().enumerate() {
            push(&mut out, format!("  [{}] {}", k + 1, br.describe()));
        }
        for br in self.separatrices.families.iter() {
            push(&mut out, format!("  [family] {}", br.describe()));
        }
        if !self.petals.is_empty() {
            push(&mut out, "petals along isolated separatrices:".to_string());
            for p in self.petals.iter() {
                push(&mut out, format!("  {}", p.to_line()));
            }
        }
        push(
            &mut out,
            format!(
                "robust parabolic curves: at least {}, {}{}",
                self.rp_lower_count,
                self.bound,
                match self.lower_within_bound {
                    Some(true) => ", consistent",
                    Some(false) => ", INCONSISTENT",
                    None => "",
                }
            ),
        );
        if self.warnings.is_empty() {
            push(&mut out, "warnings: none".to_string());
        } else {
            push(&mut out, "warnings:".to_string());
            for w in self.warnings.iter() {
                push(&mut out, format!("  - {w}"));
            }
        }
        out
    }
}

/// One verification check: an identity the toolkit can test on the input.
#[derive(Debug, Clone)]
pub struct VerifyOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Results of `verify`: structural identities evaluated on the given input.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub checks: Vec<VerifyOutcome>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{} {}: {}\n",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            ));
        }
        out.push_str(&format!(
            "verify: {}\n",
            if self.all_passed() { "all checks passed" } else { "SOME CHECKS FAILED" }
        ));
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "all_passed": self.all_passed(),
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "passed": c.passed,
                "detail": c.detail,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Verify the structural identities on one input: the exponential/logarithm
/// round trip, commutation of lifting with the exponential in both charts,
/// and agreement of the two dicriticality tests.
pub fn verify_identities(input: &ParsedInput) -> Result<VerifyReport> {
    let (x, f) = match input {
        ParsedInput::Field(x) => {
            if x.order().unwrap_or(0) < 2 {
                return Err(Error::domain(
                    "verify",
                    "not a singular field of order >= 2 (the identities involve the time-one map)",
                ));
            }
            (x.clone(), exp_flow(x)?)
        }
        ParsedInput::Map(f) => (log_map(f)?, f.clone()),
    };
    let n = x.trunc();
    let mut checks = Vec::new();
    match input {
        ParsedInput::Field(_) => {
            let back = log_map(&f)?;
            let ok = back.eq_to_degree(&x, n);
            checks.push(VerifyOutcome {
                name: "log(exp X) = X",
                passed: ok,
                detail: format!("compared to degree {n}"),
            });
        }
        ParsedInput::Map(_) => {
            let back = exp_flow(&x)?;
            let ok = back.eq_to_degree(&f, n);
            checks.push(VerifyOutcome {
                name: "exp(log f) = f",
                passed: ok,
                detail: format!("compared to degree {n}"),
            });
        }
    }
    for (chart, name) in [
        (BlowupChart::U1, "lift of exp(X) = exp of pull-back (chart u1)"),
        (BlowupChart::U2, "lift of exp(X) = exp of pull-back (chart u2)"),
    ] {
        let ok = exp_pullback_check(&x, chart)?;
        checks.push(VerifyOutcome {
            name,
            passed: ok,
            detail: format!("compared to degree {}", n.saturating_sub(2).max(1)),
        });
    }
    let df = dicritical_field(&x)?;
    let dm = dicritical_map(&f)?;
    checks.push(VerifyOutcome {
        name: "dicriticality of the map matches the field",
        passed: df == dm,
        detail: format!("field: {df}, map: {dm}"),
    });
    Ok(VerifyReport { checks })
}
