//! Certifying `tau_D = tau_R` on single process trials.

use std::path::Path;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::coloring::EdgeColoring;
use crate::danger::audit_property_m;
use crate::error::{Error, Result};
use crate::graph::{Graph, Pair};
use crate::io;
use crate::oracle::{rc_at_most_2, OracleBudget, Rc2Answer};
use crate::process::gen_weighted_process;
use crate::recolor::{recolor, verify_rc2_coloring, RecolorOutcome};
use crate::two_round::{build_two_round, TwoRoundOutput, TwoRoundParams};

use super::hitting::tau_diameter_2;
use super::report::{opt, CsvRow};

pub const DEFAULT_EXACT_CUTOFF: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    /// A verified rainbow 2-colouring of `G_{tau_D}` exists; no exact `tau_R`.
    CertifiedEqual,
    /// Nothing proven beyond `tau_D <= tau_R`.
    BoundOnly,
    ExactEqual,
    ExactStrictlyGreater,
}

impl Verdict {
    pub fn proves_equality(self) -> bool {
        matches!(self, Verdict::CertifiedEqual | Verdict::ExactEqual)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateMethod {
    Recolor,
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub success: bool,
    pub method: CertificateMethod,
    /// Colouring file name, relative to the certificate directory.
    pub coloring_file: Option<String>,
    pub failure_reason: Option<String>,
    pub failure_pair: Option<Pair>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificationRecord {
    pub trial: usize,
    pub seed: u64,
    pub n: usize,
    pub d: usize,
    pub tau_d: usize,
    /// Edges of the spanning subgraph handed to the recolourer.
    pub subgraph_edges: usize,
    /// True when that subgraph is the whole two-round graph, false when it is
    /// `G_{tau_D}` itself with the two-round colouring restricted to it.
    pub subgraph_is_two_round: bool,
    pub property_m: bool,
    pub certificate: Certificate,
    pub tau_r_exact: Option<usize>,
    pub oracle_budget_exceeded: bool,
    pub verdict: Verdict,
}

impl CsvRow for CertificationRecord {
    const HEADER: &'static [&'static str] = &[
        "trial",
        "seed",
        "n",
        "d",
        "tau_d",
        "subgraph_edges",
        "subgraph_is_two_round",
        "property_m",
        "certificate_success",
        "certificate_method",
        "coloring_file",
        "failure_reason",
        "failure_pair",
        "tau_r_exact",
        "oracle_budget_exceeded",
        "verdict",
    ];

    fn csv_fields(&self) -> Vec<String> {
        let c = &self.certificate;
        vec![
            self.trial.to_string(),
            self.seed.to_string(),
            self.n.to_string(),
            self.d.to_string(),
            self.tau_d.to_string(),
            self.subgraph_edges.to_string(),
            self.subgraph_is_two_round.to_string(),
            self.property_m.to_string(),
            c.success.to_string(),
            match c.method {
                CertificateMethod::Recolor => "recolor".into(),
                CertificateMethod::Oracle => "oracle".into(),
            },
            c.coloring_file.clone().unwrap_or_default(),
            c.failure_reason.clone().unwrap_or_default(),
            opt(c.failure_pair.map(|p| format!("{}-{}", p.lo(), p.hi()))),
            opt(self.tau_r_exact),
            self.oracle_budget_exceeded.to_string(),
            format!("{:?}", self.verdict),
        ]
    }
}

/// A record together with the objects it refers to.
#[derive(Clone, Debug)]
pub struct Certification {
    pub record: CertificationRecord,
    pub snapshot: Graph,
    /// Verified rainbow 2-colouring of `snapshot`, when one was found.
    pub coloring: Option<EdgeColoring>,
}

/// Outcome of recolouring a target graph from a coupled two-round build.
#[derive(Clone, Debug)]
pub struct SubgraphCertificate {
    pub outcome: RecolorOutcome,
    pub subgraph_edges: usize,
    pub subgraph_is_two_round: bool,
    pub property_m: bool,
}

/// Recolours `g` using the two-round build `out` drawn on the same weights.
///
/// Both graphs are threshold graphs of one weight vector, so one contains the
/// other. When `g2` is inside `g` it is the spanning subgraph; otherwise `g`
/// itself is used with the two-round colouring restricted to it.
pub fn certify_with_two_round(g: &Graph, out: &TwoRoundOutput, d: usize) -> Result<SubgraphCertificate> {
    let (gsub, col, is_two_round) = if out.g2.is_subgraph_of(g) {
        (out.g2.clone(), out.coloring.clone(), true)
    } else if g.is_subgraph_of(&out.g2) {
        (g.clone(), out.coloring.restricted_to(g), false)
    } else {
        return Err(Error::Invariant("target and two-round graphs are not nested".into()));
    };
    let property_m = audit_property_m(&gsub, &col, d)?.passes;
    let outcome = recolor(g, &gsub, &col, d)?;
    if let Some(c) = outcome.coloring() {
        if !verify_rc2_coloring(g, c)? {
            return Err(Error::Invariant("recolour reported success on an invalid colouring".into()));
        }
    }
    Ok(SubgraphCertificate {
        outcome,
        subgraph_edges: gsub.m(),
        subgraph_is_two_round: is_two_round,
        property_m,
    })
}

/// One trial: sample weights, build the coupled two-round colouring, find
/// `tau_D`, recolour `G_{tau_D}`, and for `n <= exact_cutoff` scan upward from
/// `tau_D` for the exact `tau_R`.
pub fn certify_tau_coincidence<R: Rng + ?Sized>(
    n: usize,
    params: &TwoRoundParams,
    rng: &mut R,
    exact_cutoff: usize,
    budget: OracleBudget,
) -> Result<Certification> {
    if params.n != n {
        return Err(Error::SizeMismatch(params.n, n));
    }
    let seq = gen_weighted_process(n, rng);
    let out = build_two_round(params, rng, Some(seq.weights()))?;
    let tau_d = tau_diameter_2(&seq)?;
    let snapshot = seq.snapshot(tau_d)?;
    let sub = certify_with_two_round(&snapshot, &out, params.d)?;

    let mut certificate = Certificate {
        success: sub.outcome.is_success(),
        method: CertificateMethod::Recolor,
        coloring_file: None,
        failure_reason: sub.outcome.failure().map(|f| f.name().to_string()),
        failure_pair: sub.outcome.failure().map(|f| f.pair()),
    };
    let mut coloring = sub.outcome.coloring().cloned();

    let mut tau_r_exact = None;
    let mut oracle_budget_exceeded = false;
    if n <= exact_cutoff {
        for t in tau_d..=seq.len() {
            match rc_at_most_2(&seq.snapshot(t)?, budget)? {
                Rc2Answer::Yes(witness) => {
                    tau_r_exact = Some(t);
                    if t == tau_d && coloring.is_none() {
                        if !verify_rc2_coloring(&snapshot, &witness)? {
                            return Err(Error::Invariant("oracle witness fails verification".into()));
                        }
                        certificate = Certificate {
                            success: true,
                            method: CertificateMethod::Oracle,
                            coloring_file: None,
                            failure_reason: None,
                            failure_pair: None,
                        };
                        coloring = Some(witness);
                    }
                    break;
                }
                Rc2Answer::No => {}
                Rc2Answer::BudgetExceeded => {
                    oracle_budget_exceeded = true;
                    break;
                }
            }
        }
    }

    let verdict = match tau_r_exact {
        Some(t) if t == tau_d => Verdict::ExactEqual,
        Some(_) if certificate.success => {
            return Err(Error::Invariant("certificate at tau_D but oracle finds tau_R later".into()));
        }
        Some(_) => Verdict::ExactStrictlyGreater,
        None if certificate.success => Verdict::CertifiedEqual,
        None => Verdict::BoundOnly,
    };
    Ok(Certification {
        record: CertificationRecord {
            trial: 0,
            seed: 0,
            n,
            d: params.d,
            tau_d,
            subgraph_edges: sub.subgraph_edges,
            subgraph_is_two_round: sub.subgraph_is_two_round,
            property_m: sub.property_m,
            certificate,
            tau_r_exact,
            oracle_budget_exceeded,
            verdict,
        },
        snapshot,
        coloring,
    })
}

/// Writes `<stem>.graph` and, when certified, `<stem>.coloring` into `dir`,
/// recording the colouring file name in the certificate.
pub fn save_certificate(cert: &mut Certification, dir: &Path, stem: &str) -> Result<()> {
    io::write_text(&dir.join(format!("{stem}.graph")), &io::graph_to_string(&cert.snapshot))?;
    if let Some(col) = &cert.coloring {
        let name = format!("{stem}.coloring");
        io::write_text(&dir.join(&name), &io::coloring_to_string(col))?;
        cert.record.certificate.coloring_file = Some(name);
    }
    Ok(())
}
