//! Replays the derivation of the quantum evolution laws from the classical
//! equations of motion, one identity per check, and collects a report.
//!
//! Every check draws its random instances from its own seeded stream, so the
//! report is a pure function of [`VerifyConfig`]. Checks run on separate
//! threads; the report lists them in the fixed order of [`CHECK_IDS`].

use serde::Serialize;

use crate::evolution::leibniz_derivative;
use crate::oracle::{self, FockRep, OpExpr};
use crate::poly::{normal_order, Generator, NCPoly};
use crate::random::PolyGen;
use crate::render::render_text;
use crate::scalar::{Coefficient, GaussianRational};

/// Identifiers of every check, in report order.
pub const CHECK_IDS: [&str; 11] = [
    "eq2",
    "eq4",
    "eq5-general",
    "eq6-jacobi",
    "eq7",
    "eq8",
    "eq9",
    "eq10",
    "eq11",
    "poisson-correspondence",
    "area-hbar-half",
];

pub const MAX_DEGREE_CAP: u32 = 8;
/// Largest `a + b` of the monomials `x^a p^b` checked in `eq10`.
pub const MONOMIAL_DEGREE: u32 = 8;
/// Degree cap of the random Hamiltonians paired with monomials in `eq10`.
pub const MONOMIAL_HAMILTONIAN_DEGREE: u32 = 4;
/// Number of random Hamiltonians paired with monomials in `eq10`.
pub const MONOMIAL_HAMILTONIANS: usize = 50;
/// Degree cap of the random potentials `V(x)` in `eq4` and `eq9`.
pub const POTENTIAL_DEGREE: u32 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub degree_cap: u32,
    pub cases: usize,
    pub with_oracle: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 42,
            degree_cap: 5,
            cases: 200,
            with_oracle: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Aggregate of the numeric comparisons made for one check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleSummary {
    pub pass: bool,
    pub comparisons: usize,
    pub max_deviation: f64,
    pub min_trusted_block: usize,
    pub dim: usize,
    pub tol: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip)]
    pub seed: u64,
    #[serde(skip)]
    pub instances: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSummary>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub seed: u64,
    pub checks: Vec<CheckRecord>,
    pub pass: bool,
}

impl CheckReport {
    pub fn check(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
            };
            let noun = if c.instances == 1 { "instance" } else { "instances" };
            out.push_str(&format!("{:<24} {}  ({} {noun})\n", c.id, status, c.instances));
            if let Some(o) = &c.oracle {
                let noun = if o.comparisons == 1 { "comparison" } else { "comparisons" };
                out.push_str(&format!(
                    "    oracle: {} {noun}, max deviation {:.3e}, smallest trusted block {}, D={}, tol {:.0e}\n",
                    o.comparisons, o.max_deviation, o.min_trusted_block, o.dim, o.tol
                ));
                if let Some(e) = &o.error {
                    out.push_str(&format!("    oracle error: {e}\n"));
                }
            }
            if let Some(d) = &c.detail {
                for line in d.lines() {
                    out.push_str(&format!("    {line}\n"));
                }
            }
        }
        out.push_str(&format!(
            "seed {}: {}\n",
            self.seed,
            if self.pass { "all checks passed" } else { "verification FAILED" }
        ));
        out
    }
}

/// One concrete identity `lhs == rhs`. `numeric` is the pair handed to the
/// matrix oracle; its left side is evaluated with matrix arithmetic.
struct Instance {
    label: String,
    lhs: NCPoly,
    rhs: NCPoly,
    numeric: Option<(OpExpr, NCPoly)>,
}

impl Instance {
    /// The common case: the symbolic left side is the lowering of the tree.
    fn tree(label: impl Into<String>, lhs: OpExpr, rhs: NCPoly) -> Instance {
        Instance {
            label: label.into(),
            lhs: lhs.lower(),
            rhs: rhs.clone(),
            numeric: Some((lhs, rhs)),
        }
    }
}

fn i_hbar() -> Coefficient {
    Coefficient::i_hbar()
}

fn half() -> Coefficient {
    Coefficient::from_ratio(1, 2)
}

fn kinetic() -> NCPoly {
    let two_m = Coefficient::param("m").expect("m is a valid name").scale(&GaussianRational::from_integer(2));
    NCPoly::monomial(0, 2).scalar_div(&two_m).expect("2m is a monomial")
}

fn x() -> NCPoly {
    NCPoly::x()
}

fn p() -> NCPoly {
    NCPoly::p()
}

fn instances_eq2() -> Vec<Instance> {
    let px = normal_order(&[Generator::P, Generator::X], &Coefficient::one());
    let xp = normal_order(&[Generator::X, Generator::P], &Coefficient::one());
    vec![
        Instance {
            label: "normal_order(p x) + i hbar = normal_order(x p)".into(),
            lhs: &px + &NCPoly::i_hbar(),
            rhs: xp.clone(),
            numeric: Some((OpExpr::sum([OpExpr::prod(p(), x()), NCPoly::i_hbar().into()]), xp)),
        },
        Instance::tree("[x, p] = i hbar", OpExpr::comm(x(), p()), NCPoly::i_hbar()),
        Instance::tree("[x, x] = 0", OpExpr::comm(x(), x()), NCPoly::zero()),
        Instance::tree("[p, p] = 0", OpExpr::comm(p(), p()), NCPoly::zero()),
    ]
}

fn instances_eq4(cfg: &VerifyConfig) -> Vec<Instance> {
    let mut gen = PolyGen::for_stream(cfg.seed, "eq4");
    let t = kinetic();
    let mut out = vec![
        Instance::tree("[x, p^2/(2m)] = i hbar p / m", OpExpr::comm(x(), t.clone()), p().scale(&i_hbar()).scalar_div(&Coefficient::param("m").expect("valid")).expect("monomial")),
    ];
    for k in 0..cfg.cases {
        let h = &t + &gen.potential(POTENTIAL_DEGREE);
        let rhs = h.partial_p().scale(&i_hbar());
        out.push(Instance::tree(format!("case {k}: [x, p^2/(2m) + V] = i hbar dH/dp, H = {}", render_text(&h)), OpExpr::comm(x(), h), rhs));
    }
    out
}

fn instances_eq5(cfg: &VerifyConfig) -> Vec<Instance> {
    let mut gen = PolyGen::for_stream(cfg.seed, "eq5-general");
    (0..cfg.cases)
        .map(|k| {
            let h = gen.classical(cfg.degree_cap);
            let rhs = h.partial_p().scale(&i_hbar());
            Instance::tree(format!("case {k}: [x, H] = i hbar dH/dp, H = {}", render_text(&h)), OpExpr::comm(x(), h), rhs)
        })
        .collect()
}

fn jacobi(a: &NCPoly, b: &NCPoly, c: &NCPoly) -> OpExpr {
    OpExpr::sum([
        OpExpr::comm(a, OpExpr::comm(b, c)),
        OpExpr::comm(b, OpExpr::comm(c, a)),
        OpExpr::comm(c, OpExpr::comm(a, b)),
    ])
}

fn instances_eq6(cfg: &VerifyConfig) -> Vec<Instance> {
    let mut gen = PolyGen::for_stream(cfg.seed, "eq6-jacobi");
    let mut out = Vec::new();
    for k in 0..cfg.cases {
        let h = gen.classical(cfg.degree_cap);
        out.push(Instance::tree(
            format!("case {k}: [H, [x, p]] = 0, H = {}", render_text(&h)),
            OpExpr::comm(&h, OpExpr::comm(x(), p())),
            NCPoly::zero(),
        ));
        out.push(Instance::tree(
            format!("case {k}: [H, [x, p]] + [x, [p, H]] + [p, [H, x]] = 0, H = {}", render_text(&h)),
            jacobi(&h, &x(), &p()),
            NCPoly::zero(),
        ));
        let (a, b, c) = (gen.classical(cfg.degree_cap), gen.classical(cfg.degree_cap), gen.classical(cfg.degree_cap));
        out.push(Instance::tree(
            format!("case {k}: Jacobi for A = {}, B = {}, C = {}", render_text(&a), render_text(&b), render_text(&c)),
            jacobi(&a, &b, &c),
            NCPoly::zero(),
        ));
    }
    out
}

fn instances_eq7(cfg: &VerifyConfig) -> Vec<Instance> {
    let mut gen = PolyGen::for_stream(cfg.seed, "eq7");
    (0..cfg.cases)
        .map(|k| {
            let h = gen.classical(cfg.degree_cap);
            let lhs = OpExpr::sum([OpExpr::comm(h.partial_p(), p()), OpExpr::comm(x(), -h.partial_x())]);
            Instance::tree(format!("case {k}: [dH/dp, p] + [x, -dH/dx] = 0, H = {}", render_text(&h)), lhs, NCPoly::zero())
        })
        .collect()
}

fn instances_eq8(cfg: &VerifyConfig) -> Vec<Instance> {
    let mut gen = PolyGen::for_stream(cfg.seed, "eq8");
    (0..cfg.cases)
        .map(|k| {
            let h = gen.classical(cfg.degree_cap);
            let first = OpExpr::sum([OpExpr::comm(p(), &h), h.partial_x().scale(&i_hbar()).into()]);
            let second = OpExpr::sum([OpExpr::comm(&h, x()), h.partial_p().scale(&i_hbar()).into()]);
            let lhs = OpExpr::sum([OpExpr::comm(x(), first), OpExpr::comm(p(), second)]);
            Instance::tree(
                format!("case {k}: [x, [p, H] + i hbar dH/dx] + [p, [H, x] + i hbar dH/dp] = 0, H = {}", render_text(&h)),
                lhs,
                NCPoly::zero(),
            )
        })
        .collect()
}

fn instances_eq9(cfg: &VerifyConfig) -> Vec<Instance> {
    let mut gen = PolyGen::for_stream(cfg.seed, "eq9");
    let minus_i_hbar = -&i_hbar();
    let mut out = Vec::new();
    for k in 0..cfg.cases {
        let h = gen.classical(cfg.degree_cap);
        let rhs = h.partial_x().scale(&minus_i_hbar);
        out.push(Instance::tree(format!("case {k}: [p, H] = -i hbar dH/dx, H = {}", render_text(&h)), OpExpr::comm(p(), h), rhs));
        // separated Hamiltonian: the leftover function of x must vanish
        let h = &kinetic() + &gen.potential(POTENTIAL_DEGREE);
        let rhs = h.partial_x().scale(&minus_i_hbar);
        out.push(Instance::tree(format!("case {k}: [p, p^2/(2m) + V] = -i hbar dV/dx, H = {}", render_text(&h)), OpExpr::comm(p(), h), rhs));
    }
    out
}

fn leibniz_instance(label: String, f: &NCPoly, h: &NCPoly) -> Instance {
    let derived = leibniz_derivative(f, h).expect("random Hamiltonians are hbar-free");
    let rhs = derived.scale(&i_hbar());
    Instance::tree(label, OpExpr::comm(f, h), rhs)
}

fn instances_eq10(cfg: &VerifyConfig) -> Vec<Instance> {
    let mut gen = PolyGen::for_stream(cfg.seed, "eq10");
    let n_h = cfg.cases.min(MONOMIAL_HAMILTONIANS);
    let deg = cfg.degree_cap.min(MONOMIAL_HAMILTONIAN_DEGREE);
    let mut out = Vec::new();
    for k in 0..n_h {
        let h = gen.classical(deg);
        for total in 0..=MONOMIAL_DEGREE {
            for a in 0..=total {
                let f = NCPoly::monomial(a, total - a);
                out.push(leibniz_instance(
                    format!("H{k}: i hbar D(x^{a} p^{}) = [x^{a} p^{}, H], H = {}", total - a, total - a, render_text(&h)),
                    &f,
                    &h,
                ));
            }
        }
    }
    out
}

fn instances_eq11(cfg: &VerifyConfig) -> Vec<Instance> {
    let mut gen = PolyGen::for_stream(cfg.seed, "eq11");
    (0..cfg.cases)
        .map(|k| {
            let f = gen.classical(cfg.degree_cap);
            let h = gen.classical(cfg.degree_cap);
            leibniz_instance(
                format!("case {k}: i hbar D(F) = [F, H], F = {}, H = {}", render_text(&f), render_text(&h)),
                &f,
                &h,
            )
        })
        .collect()
}

fn instances_poisson(cfg: &VerifyConfig) -> Vec<Instance> {
    let mut gen = PolyGen::for_stream(cfg.seed, "poisson-correspondence");
    (0..cfg.cases)
        .map(|k| {
            let f = gen.classical(cfg.degree_cap);
            let g = gen.classical(cfg.degree_cap);
            let comm = f.commutator(&g);
            let lhs = comm
                .scalar_div(&i_hbar())
                .and_then(|q| q.classical_limit())
                .expect("commutator of hbar-free inputs is divisible by i hbar");
            let rhs = f.poisson_bracket(&g).expect("inputs are classical");
            Instance {
                label: format!("case {k}: cl([F, G] / i hbar) = {{F, G}}, F = {}, G = {}", render_text(&f), render_text(&g)),
                lhs,
                rhs,
                numeric: Some((OpExpr::comm(&f, &g), comm)),
            }
        })
        .collect()
}

fn instances_area() -> Vec<Instance> {
    let lhs = OpExpr::scaled(
        half(),
        OpExpr::sum([OpExpr::prod(x(), p()), OpExpr::scaled(Coefficient::from_integer(-1), OpExpr::prod(p(), x()))]),
    );
    let xp_minus_px = &NCPoly::monomial(1, 1) - &normal_order(&[Generator::P, Generator::X], &Coefficient::one());
    let symbolic = xp_minus_px.scalar_div(&Coefficient::from_integer(2)).expect("2 is a monomial");
    let rhs = NCPoly::i_hbar().scale(&half());
    vec![Instance {
        label: "(x p - p x) / 2 = i hbar / 2".into(),
        lhs: symbolic,
        rhs: rhs.clone(),
        numeric: Some((lhs, rhs)),
    }]
}

fn instances(id: &str, cfg: &VerifyConfig) -> Vec<Instance> {
    match id {
        "eq2" => instances_eq2(),
        "eq4" => instances_eq4(cfg),
        "eq5-general" => instances_eq5(cfg),
        "eq6-jacobi" => instances_eq6(cfg),
        "eq7" => instances_eq7(cfg),
        "eq8" => instances_eq8(cfg),
        "eq9" => instances_eq9(cfg),
        "eq10" => instances_eq10(cfg),
        "eq11" => instances_eq11(cfg),
        "poisson-correspondence" => instances_poisson(cfg),
        "area-hbar-half" => instances_area(),
        other => unreachable!("unknown check id {other}"),
    }
}

fn failure_detail(inst: &Instance) -> String {
    format!(
        "{}\nlhs: {}\nrhs: {}\nlhs - rhs: {}",
        inst.label,
        render_text(&inst.lhs),
        render_text(&inst.rhs),
        render_text(&(&inst.lhs - &inst.rhs))
    )
}

fn run_check(id: &str, cfg: &VerifyConfig, rep: Option<&FockRep>) -> CheckRecord {
    let insts = instances(id, cfg);
    let failures: Vec<&Instance> = insts.iter().filter(|i| i.lhs != i.rhs).collect();
    let mut detail = failures.first().map(|first| {
        format!("{} of {} instances failed; first counterexample:\n{}", failures.len(), insts.len(), failure_detail(first))
    });

    let oracle = rep.map(|rep| {
        let mut summary = OracleSummary {
            pass: true,
            comparisons: 0,
            max_deviation: 0.0,
            min_trusted_block: rep.dim,
            dim: rep.dim,
            tol: oracle::DEFAULT_TOL,
            error: None,
        };
        for inst in &insts {
            let Some((lhs, rhs)) = &inst.numeric else { continue };
            match oracle::check_expr_identity(lhs, &rhs.into(), rep, oracle::DEFAULT_TOL) {
                Ok(out) => {
                    summary.comparisons += 1;
                    summary.max_deviation = summary.max_deviation.max(out.max_deviation);
                    summary.min_trusted_block = summary.min_trusted_block.min(out.trusted_block);
                    if !out.pass && summary.pass {
                        summary.pass = false;
                        let note = format!(
                            "oracle mismatch (deviation {:.3e}) on {}\nmatrix lhs vs rhs: {}",
                            out.max_deviation,
                            inst.label,
                            render_text(rhs)
                        );
                        detail = Some(match detail.take() {
                            Some(d) => format!("{d}\n{note}"),
                            None => note,
                        });
                    }
                }
                Err(e) => {
                    summary.pass = false;
                    summary.error.get_or_insert_with(|| format!("{}: {e}", inst.label));
                }
            }
        }
        summary
    });

    let pass = failures.is_empty() && oracle.as_ref().is_none_or(|o| o.pass);
    CheckRecord {
        id: id.to_string(),
        status: if pass { Status::Pass } else { Status::Fail },
        detail,
        seed: cfg.seed,
        instances: insts.len(),
        oracle,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("degree cap {0} exceeds {MAX_DEGREE_CAP}")]
    DegreeCapTooLarge(u32),
    #[error("at least one case is required")]
    NoCases,
}

/// Run every check. Failures are recorded in the report, not returned.
pub fn verify_paper(cfg: &VerifyConfig) -> Result<CheckReport, VerifyError> {
    if cfg.degree_cap > MAX_DEGREE_CAP {
        return Err(VerifyError::DegreeCapTooLarge(cfg.degree_cap));
    }
    if cfg.cases == 0 {
        return Err(VerifyError::NoCases);
    }
    let rep = if cfg.with_oracle {
        Some(FockRep::with_defaults(oracle::DEFAULT_DIM).expect("default representation is valid"))
    } else {
        None
    };
    let checks: Vec<CheckRecord> = std::thread::scope(|s| {
        let handles: Vec<_> = CHECK_IDS
            .iter()
            .map(|id| {
                let rep = rep.as_ref();
                s.spawn(move || run_check(id, cfg, rep))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("check panicked")).collect()
    });
    let pass = checks.iter().all(|c| c.status == Status::Pass);
    Ok(CheckReport {
        seed: cfg.seed,
        checks,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_run_passes() {
        let cfg = VerifyConfig { seed: 7, degree_cap: 1, cases: 1, with_oracle: true };
        let report = verify_paper(&cfg).unwrap();
        assert!(report.pass, "{}", report.to_text());
        let ids: Vec<_> = report.checks.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids, CHECK_IDS);
        assert!(report.checks.iter().all(|c| c.oracle.as_ref().unwrap().comparisons > 0));
    }

    #[test]
    fn rejects_bad_config() {
        let cfg = VerifyConfig { degree_cap: 9, ..VerifyConfig::default() };
        assert_eq!(verify_paper(&cfg), Err(VerifyError::DegreeCapTooLarge(9)));
        let cfg = VerifyConfig { cases: 0, ..VerifyConfig::default() };
        assert_eq!(verify_paper(&cfg), Err(VerifyError::NoCases));
    }

    #[test]
    fn failing_instance_is_rendered() {
        let inst = Instance {
            label: "bogus".into(),
            lhs: NCPoly::x(),
            rhs: NCPoly::p(),
            numeric: None,
        };
        let d = failure_detail(&inst);
        assert_eq!(d, "bogus\nlhs: x\nrhs: p\nlhs - rhs: x - p");
    }

    #[test]
    fn eq10_covers_all_small_monomials() {
        let cfg = VerifyConfig { seed: 1, degree_cap: 2, cases: 3, with_oracle: false };
        // 45 monomials with a + b <= 8, times 3 Hamiltonians
        assert_eq!(instances_eq10(&cfg).len(), 45 * 3);
    }
}
