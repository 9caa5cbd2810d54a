//! Table and CSV views of a report. JSON is the report itself.

use posmon_core::checkers::{ClassificationTable, Property, Witness};
use posmon_core::sequence::MonotoneWitness;

use crate::report::{Outcome, Poly, Report};

pub const DEFAULT_ROW_CAP: usize = 20;

/// Key/value summary lines plus one table.
#[derive(Debug, Default)]
pub struct Tabular {
    pub summary: Vec<(String, String)>,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Tabular {
    fn new(headers: &[&str]) -> Self {
        Tabular {
            headers: headers.iter().map(|h| h.to_string()).collect(),
            ..Default::default()
        }
    }

    fn kv(&mut self, key: &str, value: impl ToString) {
        self.summary.push((key.into(), value.to_string()));
    }

    fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn poly_text(p: &Option<Poly>) -> String {
    p.as_ref().map_or_else(|| "-".into(), |p| p.text.clone())
}

fn classification_rows(t: &mut Tabular, table: &ClassificationTable) {
    for p in Property::ALL {
        if let Some(e) = table.entries.get(&p) {
            t.row(vec![
                p.name().into(),
                serde_plain(&e.verdict),
                serde_plain(&e.basis),
                e.reason.clone(),
            ]);
        }
    }
}

/// The kebab-case name serde gives a unit variant.
fn serde_plain<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

fn witness_table(t: &mut Tabular, w: &Witness) {
    match w {
        Witness::AccpChain { steps } => {
            t.headers = vec!["n".into(), "element".into(), "next".into(), "delta".into()];
            for s in steps {
                let term = |c: &posmon_core::checkers::Combination| {
                    c.terms
                        .iter()
                        .map(|(a, m)| format!("{m}*{a}"))
                        .collect::<Vec<_>>()
                        .join(" + ")
                };
                t.row(vec![
                    s.n.to_string(),
                    format!("{} = {}", s.element.value, term(&s.element)),
                    format!("{} = {}", s.next.value, term(&s.next)),
                    format!("{} = {}", s.delta.value, term(&s.delta)),
                ]);
            }
        }
        Witness::LengthSet {
            x,
            lengths,
            factorizations,
            ..
        } => {
            t.kv("x", x);
            t.kv("lengths", join(lengths));
            t.headers = vec!["length".into(), "factorization".into()];
            for z in factorizations {
                t.row(vec![z.length().to_string(), z.to_string()]);
            }
        }
        Witness::LengthTwoPairs {
            operation,
            target,
            pairs,
            half_bound_count,
            ..
        } => {
            t.kv("operation", serde_plain(operation));
            t.kv("target", target);
            t.kv("witnesses", pairs.len());
            t.kv("witnesses at half bound", half_bound_count);
            t.headers = vec!["a".into(), "b".into()];
            for p in pairs {
                t.row(vec![p.a.to_string(), p.b.to_string()]);
            }
        }
        Witness::SliceGrowth {
            target,
            length,
            bounds,
            counts,
            ..
        } => {
            t.kv("target", target);
            t.kv("length", length);
            t.headers = vec!["max-den".into(), "count".into()];
            for (b, c) in bounds.iter().zip(counts) {
                t.row(vec![b.to_string(), c.to_string()]);
            }
        }
        Witness::AtomSet { atoms, certificates } => {
            t.headers = vec!["index".into(), "atom".into(), "prime".into(), "valuation".into()];
            for (i, a) in atoms.iter().enumerate() {
                let c = certificates.get(i);
                t.row(vec![
                    i.to_string(),
                    a.to_string(),
                    c.map_or("-".into(), |c| c.prime.to_string()),
                    c.map_or("-".into(), |c| c.valuation.to_string()),
                ]);
            }
        }
        Witness::AtomVerdicts { operation, checks } => {
            t.kv("operation", serde_plain(operation));
            t.headers = vec!["x".into(), "atom".into()];
            for c in checks {
                t.row(vec![c.x.to_string(), c.atom.to_string()]);
            }
        }
        Witness::DivisorBound {
            n_x, bound, divisors, ..
        } => {
            t.kv("n_x", n_x);
            t.kv("bound", bound);
            t.headers = vec!["index".into(), "atom".into(), "prime".into(), "cofactor".into()];
            for d in divisors {
                t.row(vec![
                    d.index.to_string(),
                    d.atom.to_string(),
                    d.prime.to_string(),
                    d.cofactor.value.to_string(),
                ]);
            }
        }
        Witness::Classification { table, supporting } => {
            t.kv("supporting certificates", supporting.len());
            t.headers = vec!["property".into(), "verdict".into(), "basis".into(), "reason".into()];
            classification_rows(t, table);
        }
    }
}

pub fn tabulate(report: &Report) -> Tabular {
    match &report.outcome {
        Outcome::Factorizations {
            truncation,
            completeness,
            factorizations,
            lengths,
        } => {
            let mut t = Tabular::new(&["length", "factorization"]);
            t.kv("truncation", truncation);
            t.kv("completeness", completeness);
            t.kv("lengths", join(lengths));
            t.kv("count", factorizations.len());
            for z in factorizations {
                t.row(vec![z.length().to_string(), z.to_string()]);
            }
            t
        }
        Outcome::Lengths(l) => {
            let mut t = Tabular::new(&["length"]);
            t.kv("truncation", l.truncation);
            t.kv("completeness", l.completeness);
            for len in &l.lengths {
                t.row(vec![len.to_string()]);
            }
            t
        }
        Outcome::Atoms {
            truncation,
            method,
            atoms,
            certificates,
        } => {
            let mut t = Tabular::new(&["index", "atom", "prime", "valuation"]);
            t.kv("truncation", truncation);
            t.kv("method", serde_plain(method));
            for (i, a) in atoms.iter().enumerate() {
                let c = certificates.get(i);
                t.row(vec![
                    i.to_string(),
                    a.to_string(),
                    c.map_or("-".into(), |c| c.prime.to_string()),
                    c.map_or("-".into(), |c| c.valuation.to_string()),
                ]);
            }
            t
        }
        Outcome::Membership { membership, atom } => {
            let mut t = Tabular::new(&["generator", "multiplicity"]);
            t.kv("member", membership.member);
            t.kv("method", serde_plain(&membership.method));
            t.kv("truncation", membership.truncation);
            t.kv("relative to truncation", membership.relative_to_truncation);
            t.kv("atom", atom.map_or("-".into(), |a| a.to_string()));
            for (g, m) in &membership.combination {
                t.row(vec![g.to_string(), m.to_string()]);
            }
            t
        }
        Outcome::Certificate(c) => {
            let mut t = Tabular::default();
            t.kv("claim", c.claim);
            t.kv("family", c.family.name());
            for (k, v) in &c.parameters {
                t.kv(k, v);
            }
            t.kv("verified", c.verified);
            witness_table(&mut t, &c.witness);
            t
        }
        Outcome::Product { product, stats } => {
            let mut t = Tabular::new(&["exponent", "coefficient"]);
            t.kv("product", &product.text);
            if let Some(s) = stats {
                t.kv("degree", &s.degree);
                t.kv("leading coefficient", &s.leading_coefficient);
                t.kv("order", &s.order);
                t.kv("eval at 1", &s.eval_at_one);
            }
            for (e, c) in &product.terms {
                t.row(vec![e.clone(), c.clone()]);
            }
            t
        }
        Outcome::Quotient { quotient } => {
            let mut t = Tabular::new(&["exponent", "coefficient"]);
            t.kv("divides", quotient.is_some());
            t.kv("quotient", poly_text(quotient));
            for (e, c) in quotient.iter().flat_map(|q| &q.terms) {
                t.row(vec![e.clone(), c.clone()]);
            }
            t
        }
        Outcome::Irreducibility {
            irreducible,
            divisor,
            cofactor,
            candidates_tested,
        } => {
            let mut t = Tabular::new(&["divisor", "cofactor"]);
            t.kv("irreducible", irreducible);
            t.kv("candidates tested", candidates_tested);
            if divisor.is_some() {
                t.row(vec![poly_text(divisor), poly_text(cofactor)]);
            }
            t
        }
        Outcome::PolyFactorizations {
            factorizations,
            lengths,
        } => {
            let mut t = Tabular::new(&["length", "factors"]);
            t.kv("lengths", join(lengths));
            t.kv("count", factorizations.len());
            for z in factorizations {
                let text: Vec<String> = z.iter().map(|p| format!("({})", p.text)).collect();
                t.row(vec![z.len().to_string(), text.join(" * ")]);
            }
            t
        }
        Outcome::Exponential { digits, value } => {
            let mut t = Tabular::default();
            t.kv("digits", digits);
            t.kv("value", value);
            t
        }
        Outcome::Subsequence(s) => {
            let mut t = Tabular::new(&["index", "value"]);
            t.kv("length", s.len());
            for (i, v) in s.indices.iter().zip(&s.values) {
                t.row(vec![i.to_string(), v.to_string()]);
            }
            t
        }
        Outcome::Monotone { witness } => {
            let mut t = Tabular::new(&["index", "value"]);
            let kind = match witness {
                MonotoneWitness::StrictlyIncreasing(_) => "strictly-increasing",
                MonotoneWitness::WeaklyDecreasing(_) => "weakly-decreasing",
            };
            t.kv("kind", kind);
            let s = witness.subsequence();
            for (i, v) in s.indices.iter().zip(&s.values) {
                t.row(vec![i.to_string(), v.to_string()]);
            }
            t
        }
        Outcome::Sum { terms } => {
            let mut t = Tabular::new(&["index", "value"]);
            for (i, v) in terms.terms.iter().enumerate() {
                t.row(vec![i.to_string(), v.to_string()]);
            }
            t
        }
        Outcome::Battery { all_verified, examples } => {
            let mut t = Tabular::new(&["example", "claim", "family", "verified"]);
            t.kv("examples", examples.len());
            t.kv("all verified", all_verified);
            for e in examples {
                let c = &e.certificate;
                t.row(vec![
                    e.name.clone(),
                    c.claim.to_string(),
                    c.family.name().into(),
                    if c.verified { "PASS".into() } else { "FAIL".into() },
                ]);
            }
            t
        }
    }
}

/// Aligned text with at most `row_cap` rows and a marker for the rest.
pub fn table(report: &Report, row_cap: usize) -> String {
    let t = tabulate(report);
    let mut out = String::new();
    let key_width = t.summary.iter().map(|(k, _)| k.chars().count() + 1).max().unwrap_or(0);
    for (k, v) in &t.summary {
        out.push_str(&format!("{:<key_width$}  {v}\n", format!("{k}:")));
    }
    if t.headers.is_empty() {
        return out;
    }
    if !t.summary.is_empty() {
        out.push('\n');
    }
    let shown = &t.rows[..t.rows.len().min(row_cap)];
    let widths: Vec<usize> = (0..t.headers.len())
        .map(|i| {
            shown
                .iter()
                .filter_map(|r| r.get(i))
                .chain(std::iter::once(&t.headers[i]))
                .map(|c| c.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    out.push_str(&line(&t.headers));
    let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
    out.push_str(&line(&rule));
    for r in shown {
        out.push_str(&line(r));
    }
    if t.rows.len() > shown.len() {
        out.push_str(&format!("… and {} more\n", t.rows.len() - shown.len()));
    }
    out
}

/// Every row, uncapped, with a header line.
pub fn csv(report: &Report) -> String {
    let t = tabulate(report);
    let mut w = csv::Writer::from_writer(Vec::new());
    let (headers, rows) = if t.headers.is_empty() {
        (
            vec!["key".to_string(), "value".to_string()],
            t.summary.iter().map(|(k, v)| vec![k.clone(), v.clone()]).collect(),
        )
    } else {
        (t.headers, t.rows)
    };
    w.write_record(&headers).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
}
