//! Text literals used in manifests.
//!
//! * rationals: `3`, `-3/2`
//! * Gaussian rationals: `1/2`, `-i`, `2i`, `1/2-1/3i`, `(1+i)`
//! * formal reals: rational, π- and symbol-scaled terms summed, e.g.
//!   `3/2*pi + 1*b - 2`
//! * forms: `-w1^wb2 + 1/2*x1^xb1 + (1-i)*w2`, generators `x`, `xb`, `w`, `wb`
//!   with 1-based indices

use std::str::FromStr;

use dolbeault_core::{Form, FormalReal, GaussRat, Generator, Universe};
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse '{input}': {reason}")]
pub struct LiteralError {
    pub input: String,
    pub reason: String,
}

fn fail<T>(input: &str, reason: impl Into<String>) -> Result<T, LiteralError> {
    Err(LiteralError { input: input.to_string(), reason: reason.into() })
}

pub fn parse_rational(s: &str) -> Result<BigRational, LiteralError> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return fail(s, "empty number");
    }
    if let Some((_, den)) = t.split_once('/') {
        if den.trim_start_matches(['+', '-']).chars().all(|c| c == '0') {
            return fail(s, "zero denominator");
        }
    }
    BigRational::from_str(&t).or_else(|_| fail(s, "expected an integer or p/q"))
}

/// Splits at top-level `+`/`-`, keeping each sign with its term. Signs that
/// follow `*`, `/`, `(` or another sign belong to the next number.
fn split_terms(s: &str) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut negative = false;
    let mut current = String::new();
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                current.push(ch);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                current.push(ch);
            }
            '+' | '-' if depth == 0 => {
                let trimmed = current.trim();
                if trimmed.is_empty() {
                    if ch == '-' {
                        negative = !negative;
                    }
                } else if trimmed.ends_with(['*', '/']) {
                    current.push(ch);
                } else {
                    out.push((negative, trimmed.to_string()));
                    current.clear();
                    negative = ch == '-';
                }
            }
            c if c.is_whitespace() => current.push(' '),
            c => current.push(c),
        }
    }
    out.push((negative, current.trim().to_string()));
    out
}

pub fn parse_gauss(s: &str) -> Result<GaussRat, LiteralError> {
    let mut t = s.trim();
    if t.is_empty() {
        return fail(s, "empty number");
    }
    while t.starts_with('(') && t.ends_with(')') {
        t = t[1..t.len() - 1].trim();
    }
    let mut acc = GaussRat::zero();
    for (negative, term) in split_terms(t) {
        if term.is_empty() {
            return fail(s, "dangling sign");
        }
        let value = if let Some(body) = term.strip_suffix('i') {
            let body = body.trim().trim_end_matches('*').trim();
            let im = if body.is_empty() {
                BigRational::one()
            } else {
                parse_rational(body).or_else(|_| fail(s, "bad imaginary part"))?
            };
            GaussRat::new(BigRational::zero(), im)
        } else {
            GaussRat::real(parse_rational(&term).or_else(|_| fail(s, "expected a Gaussian rational such as 1/2-3i"))?)
        };
        if negative {
            acc -= &value;
        } else {
            acc += &value;
        }
    }
    Ok(acc)
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn parse_formal_real(s: &str) -> Result<FormalReal, LiteralError> {
    let t = s.trim();
    if t.is_empty() {
        return fail(s, "empty number");
    }
    let mut acc = FormalReal::zero();
    for (negative, term) in split_terms(t) {
        if term.is_empty() {
            return fail(s, "dangling sign");
        }
        let (coef, name) = match term.rsplit_once('*') {
            Some((c, n)) => (parse_rational(c).or_else(|_| fail(s, "bad coefficient"))?, n.trim().to_string()),
            None if is_identifier(&term) => (BigRational::one(), term.clone()),
            None => (
                parse_rational(&term).or_else(|_| fail(s, "expected rational, q*pi or q*symbol terms"))?,
                String::new(),
            ),
        };
        let coef = if negative { -coef } else { coef };
        let value = if name.is_empty() {
            FormalReal::rational(coef)
        } else if name == "pi" {
            FormalReal::pi(coef)
        } else if is_identifier(&name) {
            FormalReal::symbol(name, coef)
        } else {
            return fail(s, format!("'{name}' is neither pi nor a symbol name"));
        };
        acc += &value;
    }
    Ok(acc)
}

pub fn parse_generator(s: &str, universe: &Universe) -> Result<Generator, LiteralError> {
    let t = s.trim();
    let (kind, digits) = if let Some(d) = t.strip_prefix("xb") {
        ("xb", d)
    } else if let Some(d) = t.strip_prefix("wb") {
        ("wb", d)
    } else if let Some(d) = t.strip_prefix('x') {
        ("x", d)
    } else if let Some(d) = t.strip_prefix('w') {
        ("w", d)
    } else {
        return fail(s, "generators are x<k>, xb<k>, w<k>, wb<k>");
    };
    let k: usize = digits.parse().or_else(|_| fail(s, "missing generator index"))?;
    let bound = if kind.starts_with('x') { universe.n } else { universe.m };
    if k == 0 || k > bound {
        return fail(s, format!("index must lie in 1..={bound}"));
    }
    Ok(match kind {
        "x" => Generator::X(k - 1),
        "xb" => Generator::XBar(k - 1),
        "w" => Generator::W(k - 1),
        _ => Generator::WBar(k - 1),
    })
}

fn parse_monomial(s: &str, universe: Universe) -> Result<Form, LiteralError> {
    let t = s.trim();
    if t == "1" {
        return Ok(Form::one(universe));
    }
    let mut acc = Form::one(universe);
    for factor in t.split('^') {
        acc = acc.wedge(&Form::generator(universe, parse_generator(factor, &universe)?));
    }
    Ok(acc)
}

fn top_level_star(s: &str) -> Option<usize> {
    let mut depth = 0usize;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            '*' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

pub fn parse_form(s: &str, universe: Universe) -> Result<Form, LiteralError> {
    let t = s.trim();
    if t.is_empty() {
        return fail(s, "empty form");
    }
    if t == "0" {
        return Ok(Form::zero(universe));
    }
    let mut acc = Form::zero(universe);
    for (negative, term) in split_terms(t) {
        if term.is_empty() {
            return fail(s, "dangling sign");
        }
        let (coef, mon) = match top_level_star(&term) {
            Some(i) => (parse_gauss(&term[..i])?, parse_monomial(&term[i + 1..], universe)?),
            None if term.starts_with(['x', 'w']) => (GaussRat::one(), parse_monomial(&term, universe)?),
            None => (parse_gauss(&term)?, Form::one(universe)),
        };
        let coef = if negative { -coef } else { coef };
        acc = acc.add(&mon.scale(&coef));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use dolbeault_core::rat;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-3/2").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational(" 4 ").unwrap(), rat(4, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn gaussian_rationals() {
        assert_eq!(parse_gauss("i").unwrap(), GaussRat::i());
        assert_eq!(parse_gauss("-i").unwrap(), -GaussRat::i());
        assert_eq!(parse_gauss("1/2-1/3i").unwrap(), GaussRat::new(rat(1, 2), rat(-1, 3)));
        assert_eq!(parse_gauss("(1+2*i)").unwrap(), GaussRat::new(rat(1, 1), rat(2, 1)));
        assert_eq!(parse_gauss("-3/2").unwrap(), GaussRat::real(rat(-3, 2)));
        for v in [GaussRat::new(rat(1, 1), rat(-1, 2)), GaussRat::new(rat(0, 1), rat(-1, 2)), GaussRat::from_int(-7)] {
            assert_eq!(parse_gauss(&v.to_string()).unwrap(), v);
        }
        assert!(parse_gauss("1+").is_err());
    }

    #[test]
    fn formal_reals() {
        let v = parse_formal_real("3/2*pi + 1*b").unwrap();
        assert_eq!(v, &FormalReal::pi(rat(3, 2)) + &FormalReal::symbol("b", rat(1, 1)));
        assert_eq!(parse_formal_real("pi").unwrap(), FormalReal::pi(rat(1, 1)));
        assert_eq!(parse_formal_real("-b").unwrap(), FormalReal::symbol("b", rat(-1, 1)));
        assert_eq!(
            parse_formal_real("2 - 2*pi").unwrap(),
            &FormalReal::rational(rat(2, 1)) + &FormalReal::pi(rat(-2, 1))
        );
        assert_eq!(parse_formal_real("0").unwrap(), FormalReal::zero());
        assert!(parse_formal_real("2*3*").is_err());
        assert!(parse_formal_real("").is_err());
    }

    #[test]
    fn forms() {
        let u = Universe::new(1, 2);
        let f = parse_form("-w1^wb2 + 1/2*x1^xb1", u).unwrap();
        assert_eq!(parse_form(&f.to_string(), u).unwrap(), f);
        let g = parse_form("(1-i)*w2 - 1/2i*wb1", u).unwrap();
        assert_eq!(parse_form(&g.to_string(), u).unwrap(), g);
        // reordering costs a sign
        assert_eq!(parse_form("wb2^w1", u).unwrap(), parse_form("-w1^wb2", u).unwrap());
        assert!(parse_form("w3", u).is_err());
        assert!(parse_form("y1", u).is_err());
        assert!(parse_form("w1^w1", u).unwrap().is_zero());
    }
}
