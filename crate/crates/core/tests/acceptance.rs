//! Acceptance criteria. Prints one PASS/FAIL line per criterion, then fails
//! if any criterion failed.

use conedual_core::random::DEFAULT_SEED;
use conedual_core::suites::{self, SuiteOutcome};

struct Criterion {
    name: &'static str,
    outcomes: Vec<SuiteOutcome>,
    min_instances: usize,
    budget_seconds: Option<f64>,
}

impl Criterion {
    fn seconds(&self) -> f64 {
        self.outcomes.iter().map(|o| o.seconds).sum()
    }

    fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        for o in &self.outcomes {
            if o.instances < self.min_instances {
                out.push(format!("{}: only {} instances, need {}", o.name, o.instances, self.min_instances));
            }
            for f in o.failures.iter().take(3) {
                out.push(format!("{}: {f}", o.name));
            }
        }
        if let Some(b) = self.budget_seconds {
            if self.seconds() > b {
                out.push(format!("took {:.1}s, budget {b}s", self.seconds()));
            }
        }
        out
    }

    fn report(&self) -> bool {
        let problems = self.problems();
        let instances: usize = self.outcomes.iter().map(|o| o.instances).sum();
        let budget = self.budget_seconds.map_or(String::new(), |b| format!(" (budget {b}s)"));
        println!(
            "{} {}: {} instances in {:.2}s{}",
            if problems.is_empty() { "PASS" } else { "FAIL" },
            self.name,
            instances,
            self.seconds(),
            budget
        );
        for p in &problems {
            println!("    {p}");
        }
        problems.is_empty()
    }
}

#[test]
fn acceptance_criteria() {
    let seed = DEFAULT_SEED;
    let criteria = [
        Criterion {
            name: "polar calculus, items 1-9, dims 2-4, exact",
            outcomes: suites::polar_identities(200, seed),
            min_instances: 200,
            budget_seconds: Some(60.0),
        },
        Criterion {
            name: "bipolar of bodies and of arbitrary polyhedra",
            outcomes: vec![suites::bipolars(100, seed)],
            min_instances: 100,
            budget_seconds: None,
        },
        Criterion {
            name: "general duality, predicates and constants, dim <= 3",
            outcomes: vec![suites::general_duality(100, seed)],
            min_instances: 100,
            budget_seconds: None,
        },
        Criterion {
            name: "orthant interval in R^2: both constants equal 1",
            outcomes: vec![suites::orthant_interval()],
            min_instances: 1,
            budget_seconds: Some(1.0),
        },
        Criterion {
            name: "direct sums: six polars and dual constants, d,m <= 3",
            outcomes: vec![suites::direct_sums(50, seed)],
            min_instances: 50,
            budget_seconds: None,
        },
        Criterion {
            name: "minimum-norm decompositions, 20 points per instance",
            outcomes: vec![suites::ando(10, 20, seed)],
            min_instances: 10,
            budget_seconds: None,
        },
        Criterion {
            name: "C* suite: 10^4 samples per item and n, 10^3 Jordan splits",
            outcomes: suites::cstar(10_000, 1000, seed),
            min_instances: 1000,
            budget_seconds: Some(120.0),
        },
        Criterion {
            name: "LP strong duality and Farkas certificates",
            outcomes: suites::lp(500, 200, seed),
            min_instances: 200,
            budget_seconds: None,
        },
    ];
    let mut all = true;
    for c in &criteria {
        all &= c.report();
    }
    assert!(all, "some acceptance criteria failed");
}
