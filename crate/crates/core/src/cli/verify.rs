use std::time::Duration;

use clap::ValueEnum;
use rayon::prelude::*;

use super::{json, ring_of, Common, Output, EXIT_BUDGET, EXIT_FAILED, EXIT_OK};
use crate::error::{Error, Result};
use crate::presentation::{
    certify_basis, certify_freeness, certify_generation_bound, certify_presentation, certify_product, certify_rational,
    certify_relation_span, certify_rewrite, multidegrees_up_to, Budget, RankCertificate,
};
use crate::ringcore::CoeffRing;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Basis,
    Product,
    Rewrite,
    Relations,
    Presentation,
    DegreeBound,
    Freeness,
    Rational,
}

impl Suite {
    fn needs_n(self) -> bool {
        self != Suite::Freeness
    }
}

/// One unit of work; `k` is only used by the relations suite.
#[derive(Clone, Debug)]
struct Case {
    a: Vec<u32>,
    k: u32,
}

pub(super) fn run(suite: Suite, common: &Common, maxdeg: u32, budget_secs: f64, timing: bool) -> Result<Output> {
    if !(budget_secs.is_finite() && budget_secs > 0.0) {
        return Err(Error::Invalid("--budget must be a positive number of seconds".into()));
    }
    let m = common.m;
    if m == 0 {
        return Err(Error::Invalid("--m must be at least 1".into()));
    }
    let n = match (suite.needs_n(), common.n) {
        (true, None) => return Err(Error::Invalid("this suite needs --n".into())),
        (_, n) => n.unwrap_or(0),
    };
    let ring = ring_of(common, CoeffRing::Rationals)?;
    if suite == Suite::Rational && !ring.contains_rationals() {
        return Err(Error::RequiresRationals);
    }
    let budget = Budget::new(Duration::from_secs_f64(budget_secs));

    if suite == Suite::DegreeBound {
        let certs = certify_generation_bound(n, m, ring, maxdeg, &budget)?;
        return Ok(report(suite, certs.into_iter().map(|c| (String::new(), Ok(c))).collect(), timing));
    }

    let cases: Vec<Case> = multidegrees_up_to(m, maxdeg)
        .into_iter()
        .flat_map(|a| {
            if suite == Suite::Relations {
                let total: u32 = a.iter().sum();
                ((n as u32 + 1)..=total).map(|k| Case { a: a.clone(), k }).collect::<Vec<_>>()
            } else {
                vec![Case { a, k: 0 }]
            }
        })
        .collect();
    let results: Vec<(String, Result<RankCertificate>)> = cases
        .par_iter()
        .map(|case| {
            let b = budget.restart();
            let a = &case.a;
            let result = match suite {
                Suite::Basis => certify_basis(n, m, a, &b),
                Suite::Product => certify_product(n, m, a, &b),
                Suite::Rewrite => certify_rewrite(n, m, a, &b),
                Suite::Relations => certify_relation_span(n, m, a, case.k, &b),
                Suite::Presentation => certify_presentation(n, m, a, ring, ring == CoeffRing::Rationals, &b),
                Suite::Freeness => certify_freeness(m, a, &b),
                Suite::Rational => certify_rational(n, m, a, &b),
                Suite::DegreeBound => unreachable!("handled above"),
            };
            (case.label(suite), result)
        })
        .collect();
    Ok(report(suite, results, timing))
}

impl Case {
    fn label(&self, suite: Suite) -> String {
        let a = self.a.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        if suite == Suite::Relations {
            format!("a=({a}) k={}", self.k)
        } else {
            format!("a=({a})")
        }
    }
}

fn report(suite: Suite, results: Vec<(String, Result<RankCertificate>)>, timing: bool) -> Output {
    let name = suite.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    let mut output = Output { records: Vec::new(), notes: Vec::new(), status: EXIT_OK };
    let (mut passed, mut failed, mut over_budget) = (0, 0, 0);
    for (label, result) in results {
        match result {
            Ok(cert) => {
                if cert.passed() {
                    passed += 1;
                } else {
                    failed += 1;
                }
                output.records.push((cert.report_line(), json::certificate(&cert, timing)));
            }
            Err(Error::BudgetExceeded(limit)) => {
                over_budget += 1;
                output.notes.push(format!("budget: {label} exceeded {limit:?} and was abandoned"));
            }
            Err(e) => {
                failed += 1;
                output.notes.push(format!("error: {label}: {e}"));
            }
        }
    }
    output.notes.push(format!("verify {name}: {passed} passed, {failed} failed, {over_budget} over budget"));
    output.status = if over_budget > 0 {
        EXIT_BUDGET
    } else if failed > 0 {
        EXIT_FAILED
    } else {
        EXIT_OK
    };
    output
}
