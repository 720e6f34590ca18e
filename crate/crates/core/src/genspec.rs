//! Textual generator specifications.
//!
//! Accepted forms: `fixpoint:a->ab,b->a@a`, `pal:(ab)^w`, `pal:c,(ab)^w`,
//! `evper:u,v`, and the names `fibonacci`, `thue-morse`, `tribonacci`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::words::{Generator, Substitution, Word};

fn invalid(s: &str) -> Error {
    Error::InvalidGenerator(s.to_string())
}

fn parse_fixpoint(body: &str) -> Result<Generator> {
    let (rules, start) = body.rsplit_once('@').ok_or_else(|| invalid(body))?;
    let mut images = Vec::new();
    for rule in rules.split(',') {
        let (a, img) = rule.split_once("->").ok_or_else(|| invalid(rule))?;
        let a = a.trim();
        if a.len() != 1 {
            return Err(invalid(rule));
        }
        images.push((a.as_bytes()[0], Word::parse(img.trim())?));
    }
    let start = start.trim();
    if start.len() != 1 {
        return Err(invalid(body));
    }
    Generator::fixpoint(Substitution::new(images)?, start.as_bytes()[0])
}

fn parse_period(s: &str) -> Result<&str> {
    let s = s.trim().strip_suffix("^w").ok_or_else(|| invalid(s))?;
    Ok(s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s))
}

fn parse_pal(body: &str) -> Result<Generator> {
    let (pre, per) = match body.rsplit_once(',') {
        Some((pre, per)) => (pre.trim(), per),
        None => ("", body),
    };
    Generator::pal(pre, parse_period(per)?)
}

fn parse_evper(body: &str) -> Result<Generator> {
    let (pre, per) = body.split_once(',').ok_or_else(|| invalid(body))?;
    Generator::eventually_periodic(pre.trim(), per.trim())
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "fibonacci" => return Ok(Generator::fibonacci()),
            "thue-morse" => return Ok(Generator::thue_morse()),
            "tribonacci" => return Ok(Generator::tribonacci()),
            _ => {}
        }
        let (kind, body) = s.split_once(':').ok_or_else(|| invalid(s))?;
        match kind.trim() {
            "fixpoint" => parse_fixpoint(body),
            "pal" => parse_pal(body),
            "evper" => parse_evper(body),
            _ => Err(invalid(s)),
        }
    }
}

fn bare(w: &Word) -> String {
    if w.is_empty() {
        String::new()
    } else {
        w.to_string()
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::FixPoint { substitution, start } => {
                let rules: Vec<String> = substitution
                    .alphabet()
                    .symbols()
                    .iter()
                    .map(|&a| format!("{}->{}", a as char, substitution.image(a)))
                    .collect();
                write!(f, "fixpoint:{}@{start}", rules.join(","))
            }
            Generator::Pal { directive } => {
                if directive.preperiod.is_empty() {
                    write!(f, "pal:({})^w", directive.period)
                } else {
                    write!(f, "pal:{},({})^w", directive.preperiod, directive.period)
                }
            }
            Generator::EventuallyPeriodic { prefix, period } => {
                write!(f, "evper:{},{}", bare(prefix), period)
            }
        }
    }
}
