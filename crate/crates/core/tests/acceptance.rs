//! Acceptance suite: every criterion at its stated tolerance (exact equality)
//! and time limit, one result line per criterion.

use std::io::Write;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use tetra_core::autom::verify_f_suite;
use tetra_core::coeff::{Params, QContext, RationalQ};
use tetra_core::crossed::{verify_involution_and_tetra, verify_tetrahedron, FChoice, RForm, RSpec};
use tetra_core::report::{CheckReport, Mutation};
use tetra_core::rtt::{
    verify_centralizer, verify_conjugation, verify_intertwine_a, verify_intertwine_t, verify_rtt_a, verify_rtt_t,
    verify_w_identities, verify_ybe,
};
use tetra_core::series::{verify_dilog_basics, verify_pent_tetr_family};
use tetra_core::uttalg::{verify_algebra_laws, verify_phi_homs};

const RS: [i32; 3] = [0, 1, 2];
const SS: [i32; 4] = [-1, 0, 1, 2];

fn sym() -> Arc<QContext<RationalQ>> {
    QContext::symbolic()
}

fn num2() -> Arc<QContext<BigRational>> {
    QContext::numeric(BigRational::from_integer(2.into())).unwrap()
}

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            pass: true,
            detail: String::new(),
        }
    }

    fn expect_pass(&mut self, rep: CheckReport) {
        if !rep.passed() {
            self.fail(format!(
                "{} {:?} {} witness {:?}",
                rep.check, rep.params, rep.status, rep.witness
            ));
        }
    }

    /// A negative control must fail with a witness of degree at most `max_degree`.
    fn expect_fail(&mut self, rep: CheckReport, max_degree: i64) {
        let ok = !rep.passed()
            && rep
                .witness
                .as_ref()
                .and_then(|w| w.degree)
                .is_some_and(|d| d <= max_degree);
        if !ok {
            self.fail(format!(
                "negative control {} did not fail at degree <= {max_degree}: {:?}",
                rep.check, rep.witness
            ));
        }
    }

    fn fail(&mut self, why: String) {
        self.pass = false;
        if self.detail.is_empty() {
            self.detail = why;
        }
    }
}

fn criterion(id: u32, name: &str, limit: Duration, body: impl FnOnce(&mut Outcome)) -> bool {
    let start = Instant::now();
    let mut out = Outcome::new();
    body(&mut out);
    let took = start.elapsed();
    if took > limit {
        out.fail(format!(
            "took {:.1} s, limit {:.0} s",
            took.as_secs_f64(),
            limit.as_secs_f64()
        ));
    }
    let line = format!(
        "criterion {id:>2} {:<4} {name:<44} {:>9.2} s (limit {:>4.0} s){}\n",
        if out.pass { "PASS" } else { "FAIL" },
        took.as_secs_f64(),
        limit.as_secs_f64(),
        if out.pass {
            String::new()
        } else {
            format!("  {}", out.detail)
        }
    );
    // bypass the harness capture so the lines always reach the log
    let _ = std::io::stdout().lock().write_all(line.as_bytes());
    out.pass
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

#[test]
fn acceptance() {
    let mut results = Vec::new();

    results.push(criterion(1, "dilog basics to order 12", secs(5), |o| {
        o.expect_pass(verify_dilog_basics(&sym(), 12, None));
    }));

    results.push(criterion(2, "pent/tetr family to order 6 + controls", secs(30), |o| {
        let ctx = sym();
        for m in [1, 2, 3] {
            for k in [-1, 1, 2] {
                o.expect_pass(verify_pent_tetr_family(&ctx, m, k, 6, 2, None));
            }
        }
        for mu in [Mutation::BasePlusOne, Mutation::BaseTimesTwo] {
            o.expect_fail(verify_pent_tetr_family(&ctx, 1, 1, 6, 2, Some(mu)), 2);
        }
    }));

    results.push(criterion(3, "Yang-Baxter n=2,3", secs(10), |o| {
        let ctx = sym();
        for n in [2, 3] {
            for r in RS {
                o.expect_pass(verify_ybe(&ctx, n, r));
            }
        }
    }));

    results.push(criterion(4, "algebra laws: RTT rewriting, C0, C1", secs(60), |o| {
        for n in [2, 3, 4] {
            for r in [-2, 0, 1, 2, 3] {
                let rep = verify_algebra_laws(n, r, None);
                if n == 3 && RS.contains(&r) && rep.subcheck("C1 central [x12]") != Some("PASS") {
                    o.fail(format!("C1 not checked for r={r}"));
                }
                if n <= 3 && rep.subcheck("RGG") != Some("PASS") {
                    o.fail(format!("RTT rewriting not checked for n={n} r={r}"));
                }
                o.expect_pass(rep);
            }
        }
    }));

    results.push(criterion(5, "RTT for T and T~, C0 values", secs(30), |o| {
        let ctx = sym();
        for r in RS {
            for s in SS {
                o.expect_pass(verify_rtt_t(&ctx, r, s, None));
            }
        }
    }));

    results.push(criterion(6, "w-identities and phi(C1)", secs(1), |o| {
        let ctx = sym();
        for r in RS {
            for s in SS {
                o.expect_pass(verify_w_identities(&ctx, s, r));
                o.expect_pass(verify_phi_homs(&ctx, r, s, None));
            }
        }
    }));

    results.push(criterion(
        7,
        "F-suite, minus variant falsified for even r",
        secs(1),
        |o| {
            let ctx = sym();
            for r in RS {
                o.expect_pass(verify_f_suite(&ctx, r, None));
            }
            for r in [0, 2] {
                let rep = verify_f_suite(&ctx, r, Some(Mutation::FMinus));
                if rep.passed() || rep.witness.is_none() {
                    o.fail(format!("minus variant not falsified at r={r}"));
                }
            }
        },
    ));

    results.push(criterion(8, "conjugation to order 6", secs(60), |o| {
        let ctx = sym();
        for r in RS {
            for s in SS {
                o.expect_pass(verify_conjugation(&ctx, s, r, 6, &FChoice::MENU, None));
            }
        }
    }));

    results.push(criterion(9, "intertwining for R^(s) to order 6", secs(120), |o| {
        let ctx = sym();
        for r in RS {
            for s in SS {
                o.expect_pass(verify_intertwine_t(&ctx, s, r, 6, &FChoice::MENU, None));
            }
        }
    }));

    results.push(criterion(10, "RTT for A0, A0~ and M, M' to order 3", secs(300), |o| {
        let ctx = num2();
        o.expect_pass(verify_rtt_a(&ctx, 1, 0));
        let rep = verify_intertwine_a(&ctx, 0, 1, 3, FChoice::Const, None);
        for key in ["M A = A~ M", "M' A = A~ M'"] {
            if rep.subcheck(key) != Some("PASS") {
                o.fail(format!("{key} not verified"));
            }
        }
        o.expect_pass(rep);
    }));

    results.push(criterion(
        11,
        "tetrahedron for Rgl to order 4 + control",
        secs(300),
        |o| {
            let ctx = num2();
            for (m, k) in [(1, 1), (2, 1), (1, 2)] {
                let form = RForm::Rgl {
                    alpha: [-1, 1, 0],
                    beta: [1, 0, -1],
                    m,
                    k,
                };
                o.expect_pass(verify_tetrahedron(
                    &ctx,
                    "tetra_Rgl",
                    RSpec::new((1, 2, 3), Params::ONE, form),
                    4,
                ));
            }
            let mut spec = RSpec::new(
                (1, 2, 3),
                Params::ONE,
                RForm::Rgl {
                    alpha: [-1, 1, 0],
                    beta: [1, 0, -1],
                    m: 1,
                    k: 1,
                },
            );
            spec.mutation = Some(Mutation::BaseTimesTwo);
            o.expect_fail(verify_tetrahedron(&ctx, "tetra_Rgl", spec, 2), 2);
        },
    ));

    results.push(criterion(12, "Rgfl, ru3 and involution to order 4", secs(600), |o| {
        let ctx = num2();
        let wwab = RSpec::new((1, 2, 3), Params::ONE, RForm::wwab(0, 1, 1, 1, 1, 1));
        o.expect_pass(verify_tetrahedron(&ctx, "tetra_Rgfl", wwab, 4));
        for mhat in [1, 2] {
            let f = FChoice::Ru3 { mhat, l: 1 };
            let spec = RSpec::new(
                (1, 2, 3),
                Params::ONE,
                RForm::Rffs {
                    s: 0,
                    r: 1,
                    f,
                    left: false,
                },
            );
            o.expect_pass(verify_tetrahedron(&ctx, "tetra_paper_R", spec, 4));
        }
        for sign in [1, -1] {
            o.expect_pass(verify_involution_and_tetra(&ctx, 0, 1, sign, 4, None));
        }
    }));

    results.push(criterion(13, "centralizer lattice with box scan", secs(1), |o| {
        let ctx = sym();
        for r in RS {
            for s in SS {
                let rep = verify_centralizer(&ctx, r, s);
                if !rep.params.contains_key("index") {
                    o.fail(format!("no index reported for r={r} s={s}"));
                }
                o.expect_pass(rep);
            }
        }
    }));

    let passed = results.iter().filter(|&&p| p).count();
    let _ = writeln!(
        std::io::stdout().lock(),
        "acceptance: {passed}/{} criteria passed",
        results.len()
    );
    assert!(results.iter().all(|&p| p), "{passed}/{} criteria passed", results.len());
}
