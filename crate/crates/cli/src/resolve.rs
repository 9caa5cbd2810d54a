//! Turns flags plus config-file defaults into a validated [`Query`].

use std::path::Path;

use posmon_core::arith::parse_rational;
use posmon_core::checkers::LffTarget;
use posmon_core::semiring::{GenPoly, DEFAULT_SEARCH_BUDGET};
use posmon_core::sequence::FiniteSeq;
use posmon_core::{GeneratorFamily, MonoidSpec, PrimeSequence, Rational, Truncation};

use crate::args::{CheckCommand, Command, FamilyName, FileConfig, MonoidArgs, SemiringCommand, SeqCommand};
use crate::report::Query;

/// A usage error; the message names the offending flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Usage(pub String);

type R<T> = Result<T, Usage>;

const DEFAULT_CHAIN_LENGTH: u64 = 20;
const DEFAULT_FACTOR_LENGTH: u64 = 10;
const DEFAULT_DIGITS: u32 = 10;

fn usage<T>(msg: impl Into<String>) -> R<T> {
    Err(Usage(msg.into()))
}

fn rational(flag: &str, value: &str) -> R<Rational> {
    parse_rational(value).map_err(|e| Usage(format!("--{flag}: {e}")))
}

fn required<T: Clone>(flag: &str, value: &Option<T>, context: &str) -> R<T> {
    match value {
        Some(v) => Ok(v.clone()),
        None => usage(format!("--{flag} is required{context}")),
    }
}

fn rational_list(flag: &str, value: &str) -> R<Vec<Rational>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| rational(flag, s))
        .collect()
}

fn prime_list(value: &str) -> R<Vec<u64>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<u64>()
                .map_err(|_| Usage(format!("--primes: `{s}` is not a positive integer")))
        })
        .collect()
}

/// How much truncation a command needs from a sequence or dense family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Need {
    /// Queries that enumerate: sequence families need `--k`, dense ones `--max-den`.
    Truncation,
    /// Closed forms are enough; truncation flags are optional.
    Optional,
}

fn family_of(m: &MonoidArgs) -> FamilyName {
    match (m.family, &m.gens) {
        (Some(f), _) => f,
        (None, Some(_)) => FamilyName::Explicit,
        (None, None) if m.q.is_some() => FamilyName::Power,
        (None, None) if m.r.is_some() => FamilyName::Sring,
        (None, None) => FamilyName::Explicit,
    }
}

fn name(f: FamilyName) -> &'static str {
    match f {
        FamilyName::Explicit => "explicit",
        FamilyName::Grams => "grams",
        FamilyName::Power => "power",
        FamilyName::UnitFractions => "unit-fractions",
        FamilyName::Alternating => "alternating",
        FamilyName::Conductor => "conductor",
        FamilyName::Sring => "sring",
    }
}

fn reject_foreign_flags(f: FamilyName, m: &MonoidArgs) -> R<()> {
    let allowed: &[&str] = match f {
        FamilyName::Explicit => &["gens"],
        FamilyName::Grams => &["k"],
        FamilyName::Power => &["q", "k"],
        FamilyName::UnitFractions => &["k", "max-prime"],
        FamilyName::Alternating => &["k", "primes"],
        FamilyName::Conductor => &["max-den"],
        FamilyName::Sring => &["r", "max-den"],
    };
    let given = [
        ("gens", m.gens.is_some()),
        ("k", m.k.is_some()),
        ("q", m.q.is_some()),
        ("r", m.r.is_some()),
        ("max-den", m.max_den.is_some()),
        ("max-prime", m.max_prime.is_some()),
        ("primes", m.primes.is_some()),
    ];
    for (flag, present) in given {
        if present && !allowed.contains(&flag) {
            return usage(format!("--{flag} does not apply to family {}", name(f)));
        }
    }
    if f == FamilyName::UnitFractions && m.k.is_some() && m.max_prime.is_some() {
        return usage("--k and --max-prime are mutually exclusive");
    }
    Ok(())
}

/// The generator family named by the flags, without any truncation.
pub fn family(m: &MonoidArgs) -> R<GeneratorFamily> {
    let f = family_of(m);
    reject_foreign_flags(f, m)?;
    Ok(match f {
        FamilyName::Explicit => {
            let ctx = " for family explicit";
            let gens = rational_list("gens", &required("gens", &m.gens, ctx)?)?;
            GeneratorFamily::Explicit { gens }
        }
        FamilyName::Grams => GeneratorFamily::Grams,
        FamilyName::Power => GeneratorFamily::PowerOf {
            q: rational("q", &required("q", &m.q, " for family power")?)?,
        },
        FamilyName::UnitFractions => GeneratorFamily::UnitFractionPrimes,
        FamilyName::Alternating => GeneratorFamily::Alternating {
            primes: match &m.primes {
                Some(p) => PrimeSequence::Custom(prime_list(p)?),
                None => PrimeSequence::All,
            },
        },
        FamilyName::Conductor => GeneratorFamily::ConductorQ,
        FamilyName::Sring => GeneratorFamily::SRing {
            r: rational("r", &required("r", &m.r, " for family sring")?)?,
        },
    })
}

fn monoid(m: &MonoidArgs, need: Need) -> R<MonoidSpec> {
    let fam = family(m)?;
    let f = family_of(m);
    let truncation = match f {
        FamilyName::Explicit => Truncation::None,
        FamilyName::Conductor | FamilyName::Sring => match m.max_den {
            Some(max_den) => Truncation::Denominator { max_den },
            None if need == Need::Truncation => return usage("dense family requires --max-den"),
            None => Truncation::None,
        },
        FamilyName::UnitFractions if m.max_prime.is_some() => {
            let p = m.max_prime.unwrap_or_default();
            return MonoidSpec::unit_fractions_up_to(p).map_err(|e| Usage(format!("--max-prime: {e}")));
        }
        _ => match m.k {
            Some(k) => Truncation::Index { k },
            None if need == Need::Truncation => return usage(format!("sequence family {} requires --k", name(f))),
            None => Truncation::None,
        },
    };
    MonoidSpec::new(fam, truncation).map_err(|e| Usage(format!("--family {}: {e}", name(f))))
}

/// Exponent monoid for semiring commands: N_0 unless flags say otherwise.
fn exponent_monoid(m: &MonoidArgs) -> R<MonoidSpec> {
    if m.family.is_none() && m.gens.is_none() && m.q.is_none() && m.r.is_none() {
        return MonoidSpec::numerical(&[1]).map_err(|e| Usage(e.to_string()));
    }
    monoid(m, Need::Truncation)
}

fn poly(flag: &str, text: &Option<String>, spec: &MonoidSpec) -> R<String> {
    let text = required(flag, text, "")?;
    GenPoly::parse(&text, spec)
        .map(|p| p.to_string())
        .map_err(|e| Usage(format!("--{flag}: {e}")))
}

fn sequence(flag: &str, path: &Path) -> R<FiniteSeq<Rational>> {
    let text = if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin()).map_err(|e| Usage(format!("--{flag}: {e}")))?
    } else {
        std::fs::read_to_string(path).map_err(|e| Usage(format!("--{flag}: cannot read {}: {e}", path.display())))?
    };
    FiniteSeq::parse_lines(&text).map_err(|e| Usage(format!("--{flag} {}: {e}", path.display())))
}

fn only_family(m: &MonoidArgs, allowed: &[FamilyName], command: &str) -> R<()> {
    let f = family_of(m);
    if m.family.is_none() && m.gens.is_none() && m.q.is_none() && m.r.is_none() {
        return usage(format!("--family is required for {command}"));
    }
    if !allowed.contains(&f) {
        let names: Vec<&str> = allowed.iter().map(|&a| name(a)).collect();
        return usage(format!(
            "--family {} is not supported by {command} (expected {})",
            name(f),
            names.join(" or ")
        ));
    }
    Ok(())
}

pub fn query(command: &Command, cfg: &FileConfig) -> R<Query> {
    let x = |flag: &Option<String>| -> R<Rational> {
        let v = flag.clone().or_else(|| cfg.x.clone());
        rational("x", &required("x", &v, "")?)
    };
    Ok(match command {
        Command::Factorize {
            monoid: m,
            x: xf,
            length,
            max_len,
        } => {
            let m = cfg.merge_monoid(m);
            let spec = monoid(&m, Need::Truncation)?;
            let length = length.or(cfg.length);
            let max_len = max_len.or(cfg.max_len);
            if length.is_some() && max_len.is_some() {
                return usage("--length and --max-len are mutually exclusive");
            }
            if length == Some(0) {
                return usage("--length must be at least 1");
            }
            if spec.family.is_dense() && length.or(max_len).is_none() {
                return usage("dense family requires --length or --max-len");
            }
            Query::Factorize {
                monoid: spec,
                x: x(xf)?,
                length,
                max_len,
            }
        }
        Command::Lengths {
            monoid: m,
            x: xf,
            max_len,
        } => {
            let m = cfg.merge_monoid(m);
            let spec = monoid(&m, Need::Truncation)?;
            let max_len = max_len.or(cfg.max_len);
            if !matches!(spec.family, GeneratorFamily::Explicit { .. }) && max_len.is_none() {
                return usage(format!("--max-len is required for family {}", spec.family.name()));
            }
            Query::Lengths {
                monoid: spec,
                x: x(xf)?,
                max_len,
            }
        }
        Command::Atoms { monoid: m, upper } => {
            let m = cfg.merge_monoid(m);
            let spec = monoid(&m, Need::Truncation)?;
            let upper = match upper.clone().or_else(|| cfg.upper.clone()) {
                Some(u) => Some(rational("upper", &u)?),
                None if spec.family.is_dense() => return usage("dense family requires --upper"),
                None => None,
            };
            Query::Atoms { monoid: spec, upper }
        }
        Command::Contains { monoid: m, x: xf } => {
            let m = cfg.merge_monoid(m);
            Query::Contains {
                monoid: monoid(&m, Need::Optional)?,
                x: x(xf)?,
            }
        }
        Command::Check { check } => check_query(check, cfg, &x)?,
        Command::Semiring { op } => semiring_query(op, cfg)?,
        Command::Seq { op } => seq_query(op)?,
        Command::PaperExamples => Query::PaperExamples,
    })
}

fn check_query(check: &CheckCommand, cfg: &FileConfig, x: &dyn Fn(&Option<String>) -> R<Rational>) -> R<Query> {
    Ok(match check {
        CheckCommand::Accp { monoid: m, n_max } => {
            let m = cfg.merge_monoid(m);
            only_family(&m, &[FamilyName::Grams, FamilyName::Power], "check accp")?;
            Query::CheckAccp {
                family: family(&m)?,
                n_max: n_max.or(cfg.n_max).unwrap_or(DEFAULT_CHAIN_LENGTH),
            }
        }
        CheckCommand::Bf { monoid: m } => {
            let mut m = cfg.merge_monoid(m);
            m.family.get_or_insert(FamilyName::UnitFractions);
            only_family(&m, &[FamilyName::UnitFractions], "check bf")?;
            reject_foreign_flags(FamilyName::UnitFractions, &m)?;
            if m.k.is_some() {
                return usage("--k does not apply to check bf; use --max-prime");
            }
            let max_prime = required("max-prime", &m.max_prime, " for check bf")?;
            if max_prime < 2 {
                return usage("--max-prime must be at least 2");
            }
            Query::CheckBf { max_prime }
        }
        CheckCommand::Lff { monoid: m, mul, s } => {
            let m = cfg.merge_monoid(m);
            only_family(&m, &[FamilyName::Conductor, FamilyName::Sring], "check lff")?;
            let max_den = required("max-den", &m.max_den, " for check lff")?;
            let s = s.clone().or_else(|| cfg.s.clone());
            let target = match family(&m)? {
                GeneratorFamily::ConductorQ if *mul => return usage("--mul applies only to family sring"),
                GeneratorFamily::ConductorQ => LffTarget::Conductor,
                GeneratorFamily::SRing { r } if *mul => LffTarget::SRingMultiplicative {
                    r,
                    s: s.map(|s| rational("s", &s)).transpose()?,
                },
                GeneratorFamily::SRing { r } => {
                    if s.is_some() {
                        return usage("--s applies only with --mul");
                    }
                    LffTarget::SRingAdditive { r }
                }
                _ => unreachable!("family checked above"),
            };
            Query::CheckLff { target, max_den }
        }
        CheckCommand::FfmBound { monoid: m, x: xf } => {
            let mut m = cfg.merge_monoid(m);
            m.family.get_or_insert(FamilyName::Alternating);
            only_family(&m, &[FamilyName::Alternating], "check ffm-bound")?;
            let GeneratorFamily::Alternating { primes } = family(&m)? else {
                unreachable!("family checked above")
            };
            Query::CheckFfmBound { x: x(xf)?, primes }
        }
        CheckCommand::Classify { monoid: m } => {
            let m = cfg.merge_monoid(m);
            if m.family.is_none() && m.gens.is_none() {
                return usage("--family is required for check classify");
            }
            Query::CheckClassify { family: family(&m)? }
        }
    })
}

fn semiring_query(op: &SemiringCommand, cfg: &FileConfig) -> R<Query> {
    Ok(match op {
        SemiringCommand::Mul { monoid: m, f, g } => {
            let spec = exponent_monoid(&cfg.merge_monoid(m))?;
            Query::SemiringMul {
                f: poly("f", f, &spec)?,
                g: poly("g", g, &spec)?,
                monoid: spec,
            }
        }
        SemiringCommand::Div { monoid: m, f, g } => {
            let spec = exponent_monoid(&cfg.merge_monoid(m))?;
            Query::SemiringDiv {
                f: poly("f", f, &spec)?,
                g: poly("g", g, &spec)?,
                monoid: spec,
            }
        }
        SemiringCommand::Irreducible { monoid: m, f, budget } => {
            let spec = exponent_monoid(&cfg.merge_monoid(m))?;
            Query::SemiringIrreducible {
                f: poly("f", f, &spec)?,
                budget: budget.or(cfg.budget).unwrap_or(DEFAULT_SEARCH_BUDGET),
                monoid: spec,
            }
        }
        SemiringCommand::Factor { monoid: m, f, max_len } => {
            let spec = exponent_monoid(&cfg.merge_monoid(m))?;
            let max_len = max_len.or(cfg.max_len).unwrap_or(DEFAULT_FACTOR_LENGTH);
            if max_len == 0 {
                return usage("--max-len must be at least 1");
            }
            Query::SemiringFactor {
                f: poly("f", f, &spec)?,
                max_len,
                monoid: spec,
            }
        }
        SemiringCommand::Eval { monoid: m, f, digits } => {
            let spec = exponent_monoid(&cfg.merge_monoid(m))?;
            let digits = digits.or(cfg.digits).unwrap_or(DEFAULT_DIGITS);
            if digits == 0 {
                return usage("--digits must be at least 1");
            }
            Query::SemiringEval {
                f: poly("f", f, &spec)?,
                digits,
                monoid: spec,
            }
        }
    })
}

fn seq_query(op: &SeqCommand) -> R<Query> {
    let one = |input: &Option<std::path::PathBuf>| -> R<FiniteSeq<Rational>> {
        sequence("input", &required("input", input, "")?)
    };
    Ok(match op {
        SeqCommand::Lis { input } => Query::SeqLis { terms: one(input)? },
        SeqCommand::Lwd { input } => Query::SeqLwd { terms: one(input)? },
        SeqCommand::Monotone { input, r, t } => Query::SeqMonotone {
            terms: one(input)?,
            r: required("r", r, "")?,
            t: required("t", t, "")?,
        },
        SeqCommand::Sum { input } => {
            if input.is_empty() {
                return usage("--input is required (repeat it once per sequence)");
            }
            Query::SeqSum {
                sequences: input.iter().map(|p| sequence("input", p)).collect::<R<Vec<_>>>()?,
            }
        }
    })
}
