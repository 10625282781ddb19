use ohom_core::cointerval::{
    exists_cointerval_order, is_cointerval, is_shifted, SheddingSearch, SheddingTree,
};
use ohom_core::homology::{
    collapse_certificate, homology_ranks, is_acyclic, removal_sequence, FieldTag, RemovalOutcome,
};
use ohom_core::resolution::{failing_lcm, verify_linearity, verify_minimality};
use ohom_core::{Complex, PComplex};
use serde_json::json;

use crate::report::{bracket, describe_violation, Failure, Outcome, Report};

/// A yes/no property of a single complex.
pub trait ComplexCheck: Sync {
    fn name(&self) -> &'static str;
    fn run(&self, h: &Complex, bound: usize) -> Outcome;
}

/// A check on the labeled complex of a pair `(G, H)`.
pub trait Verifier: Sync {
    fn name(&self) -> &'static str;
    fn run(&self, x: &PComplex, field: FieldTag) -> Outcome;
}

struct Cointerval;
struct Shifted;
struct VertexDecomposable;
struct FindOrder;

impl ComplexCheck for Cointerval {
    fn name(&self) -> &'static str {
        "cointerval"
    }

    fn run(&self, h: &Complex, _bound: usize) -> Outcome {
        let witness = is_cointerval(h);
        let mut text = format!("cointerval: {}", witness.verdict);
        if let Some(v) = &witness.violation {
            text.push_str(&format!("\nwitness: {}", describe_violation(v)));
        }
        Ok(Report::new(witness.verdict, text, &witness))
    }
}

impl ComplexCheck for Shifted {
    fn name(&self) -> &'static str {
        "shifted"
    }

    fn run(&self, h: &Complex, _bound: usize) -> Outcome {
        let shifted = is_shifted(h);
        Ok(Report::new(shifted, format!("shifted: {shifted}"), json!({ "shifted": shifted })))
    }
}

impl ComplexCheck for VertexDecomposable {
    fn name(&self) -> &'static str {
        "vertex-decomposable"
    }

    fn run(&self, h: &Complex, _bound: usize) -> Outcome {
        let mut search = SheddingSearch::new();
        match search.decompose(h) {
            Some(tree) => {
                let text = match &tree {
                    SheddingTree::Node { vertex, .. } => {
                        format!("vertex-decomposable: true\nshedding vertex: {vertex}\ndepth: {}", tree.depth())
                    }
                    SheddingTree::Leaf { .. } => "vertex-decomposable: true\ndepth: 0".to_string(),
                };
                Ok(Report::new(true, text, json!({ "decomposable": true, "tree": tree })))
            }
            None => {
                let failures = search.failures(h);
                let mut text = String::from("vertex-decomposable: false");
                for (x, why) in &failures {
                    text.push_str(&format!("\nvertex {x}: {}", serde_json::to_string(why).unwrap()));
                }
                let failures: Vec<_> = failures
                    .iter()
                    .map(|(x, why)| json!({ "vertex": x, "failure": why }))
                    .collect();
                Ok(Report::new(
                    false,
                    text,
                    json!({ "decomposable": false, "failures": failures }),
                ))
            }
        }
    }
}

impl ComplexCheck for FindOrder {
    fn name(&self) -> &'static str {
        "find-order"
    }

    fn run(&self, h: &Complex, bound: usize) -> Outcome {
        let order = exists_cointerval_order(h, bound)?;
        let text = match &order {
            Some(perm) => format!("order: {}", bracket(perm)),
            None => "order: none".to_string(),
        };
        Ok(Report::new(order.is_some(), text, json!({ "order": order })))
    }
}

struct Acyclicity;
struct Minimality;
struct Linearity;
struct Collapse;
struct Removal;

impl Verifier for Acyclicity {
    fn name(&self) -> &'static str {
        "acyclicity"
    }

    /// Acyclicity of the complex itself and of every lcm-lattice subcomplex.
    fn run(&self, x: &PComplex, field: FieldTag) -> Outcome {
        if x.is_empty() {
            let text = format!("field: {field}\nempty complex");
            return Ok(Report::new(true, text, json!({ "field": field, "empty": true })));
        }
        let ranks = homology_ranks(x, field)?;
        let acyclic = is_acyclic(x, field);
        let failing = failing_lcm(x, field)?;
        let mut text = format!("field: {field}\nreduced homology: {}\nacyclic: {acyclic}", bracket(&ranks));
        match &failing {
            Some(alpha) => text.push_str(&format!("\nsupports resolution: false\nfailing lcm: {alpha}")),
            None => text.push_str("\nsupports resolution: true"),
        }
        let json = json!({
            "field": field,
            "reduced_homology": ranks,
            "acyclic": acyclic,
            "supports_resolution": failing.is_none(),
            "failing_lcm": failing.as_ref().map(|m| m.exponents().to_vec()),
        });
        Ok(Report::new(acyclic && failing.is_none(), text, json))
    }
}

impl Verifier for Minimality {
    fn name(&self) -> &'static str {
        "minimality"
    }

    fn run(&self, x: &PComplex, _field: FieldTag) -> Outcome {
        let ok = verify_minimality(x);
        Ok(Report::new(ok, format!("minimal: {ok}"), json!({ "minimal": ok })))
    }
}

impl Verifier for Linearity {
    fn name(&self) -> &'static str {
        "linearity"
    }

    fn run(&self, x: &PComplex, _field: FieldTag) -> Outcome {
        let ok = verify_linearity(x);
        Ok(Report::new(ok, format!("linear: {ok}"), json!({ "linear": ok })))
    }
}

impl Verifier for Collapse {
    fn name(&self) -> &'static str {
        "collapse"
    }

    fn run(&self, x: &PComplex, _field: FieldTag) -> Outcome {
        if x.is_empty() {
            return Err(Failure::Failed("the complex is empty".into()));
        }
        let pairs = collapse_certificate(x);
        let text = match &pairs {
            Some(p) => {
                let mut t = format!("collapsible: true\npairs: {}", p.len());
                for (face, cell) in p {
                    t.push_str(&format!("\n{face:?} < {cell:?}"));
                }
                t
            }
            None => "collapsible: false".to_string(),
        };
        Ok(Report::new(
            pairs.is_some(),
            text,
            json!({ "collapsible": pairs.is_some(), "pairs": pairs }),
        ))
    }
}

impl Verifier for Removal {
    fn name(&self) -> &'static str {
        "removal"
    }

    fn run(&self, x: &PComplex, _field: FieldTag) -> Outcome {
        let outcome = removal_sequence(x)?;
        let text = match outcome.certificate() {
            Some(cert) => {
                let mut t = format!("removal: certified\nsteps: {}", cert.steps.len());
                for step in &cert.steps {
                    t.push_str(&format!("\nremove {:?} inside {:?}", step.vertex, step.facet));
                }
                t.push_str(&format!("\nterminal: {:?}", cert.terminal));
                t
            }
            None => {
                let RemovalOutcome::Stuck { vertex, facets } = &outcome else {
                    unreachable!("uncertified outcomes are stuck")
                };
                let listed: Vec<String> = facets.iter().map(|f| format!("{f:?}")).collect();
                format!("removal: stuck\nvertex: {vertex:?}\nfacets: {}", listed.join(" "))
            }
        };
        Ok(Report::new(outcome.is_certified(), text, &outcome))
    }
}

pub fn complex_checks() -> [&'static dyn ComplexCheck; 4] {
    [&Cointerval, &Shifted, &VertexDecomposable, &FindOrder]
}

pub fn verifiers() -> [&'static dyn Verifier; 5] {
    [&Acyclicity, &Minimality, &Linearity, &Collapse, &Removal]
}

pub fn complex_check(name: &str) -> Option<&'static dyn ComplexCheck> {
    complex_checks().into_iter().find(|c| c.name() == name)
}

pub fn verifier(name: &str) -> Option<&'static dyn Verifier> {
    verifiers().into_iter().find(|v| v.name() == name)
}
