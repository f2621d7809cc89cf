//! Text format:
//!
//! ```text
//! n: 4            (optional)
//! h: (1 2 3)
//! v: 4 2 3 1
//! ```
//!
//! Each of `h` and `v` is either one-line image notation or a product of
//! disjoint cycles, where fixed points may be omitted. Without an `n:`
//! line the square count is the largest integer mentioned. Blank lines
//! and lines starting with `#` are ignored.

use std::str::FromStr;

use super::Origami;
use crate::error::OrigamiError;
use crate::permutation::Permutation;

enum Notation {
    Images(Vec<usize>),
    Cycles(Vec<Vec<usize>>),
}

impl Notation {
    fn max_label(&self) -> usize {
        match self {
            Notation::Images(xs) => xs.iter().copied().max().unwrap_or(0).max(xs.len()),
            Notation::Cycles(cs) => cs.iter().flatten().copied().max().unwrap_or(0),
        }
    }
}

fn syntax(line: usize, message: impl Into<String>) -> OrigamiError {
    OrigamiError::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_label(token: &str, line: usize) -> Result<usize, OrigamiError> {
    match token.parse::<usize>() {
        Ok(0) => Err(syntax(line, "square labels start at 1")),
        Ok(x) => Ok(x),
        Err(_) => Err(syntax(
            line,
            format!("expected a positive integer, found `{token}`"),
        )),
    }
}

fn parse_cycles(spec: &str, line: usize) -> Result<Vec<Vec<usize>>, OrigamiError> {
    let mut cycles = Vec::new();
    let mut rest = spec.trim();
    while !rest.is_empty() {
        let Some(body) = rest.strip_prefix('(') else {
            return Err(syntax(line, format!("expected `(` at `{rest}`")));
        };
        let Some(close) = body.find(')') else {
            return Err(syntax(line, "unclosed `(`"));
        };
        let inner = &body[..close];
        if inner.contains('(') {
            return Err(syntax(line, "nested `(`"));
        }
        let cycle = inner
            .split_whitespace()
            .map(|t| parse_label(t, line))
            .collect::<Result<Vec<_>, _>>()?;
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        rest = body[close + 1..].trim_start();
    }
    Ok(cycles)
}

fn parse_spec(spec: &str, line: usize) -> Result<Notation, OrigamiError> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Err(syntax(line, "empty permutation"));
    }
    if spec.contains('(') || spec.contains(')') {
        parse_cycles(spec, line).map(Notation::Cycles)
    } else {
        spec.split_whitespace()
            .map(|t| parse_label(t, line))
            .collect::<Result<Vec<_>, _>>()
            .map(Notation::Images)
    }
}

fn build(which: &str, notation: Notation, n: usize) -> Result<Permutation, OrigamiError> {
    match notation {
        Notation::Images(xs) => {
            if xs.len() != n {
                return Err(OrigamiError::NotBijective(format!(
                    "{which} lists {} images but the surface has {n} squares",
                    xs.len()
                )));
            }
            Permutation::from_one_based(&xs)
        }
        Notation::Cycles(cs) => Permutation::from_cycles(n, &cs),
    }
}

impl Origami {
    pub fn parse(text: &str) -> Result<Origami, OrigamiError> {
        let mut n_line: Option<usize> = None;
        let mut h: Option<Notation> = None;
        let mut v: Option<Notation> = None;
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            last_line = line;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let Some((key, value)) = trimmed.split_once(':') else {
                return Err(syntax(line, "expected `key: value`"));
            };
            match key.trim() {
                "n" => {
                    if n_line.is_some() {
                        return Err(syntax(line, "duplicate `n:` line"));
                    }
                    n_line = Some(parse_label(value.trim(), line)?);
                }
                "h" => {
                    if h.is_some() {
                        return Err(syntax(line, "duplicate `h:` line"));
                    }
                    h = Some(parse_spec(value, line)?);
                }
                "v" => {
                    if v.is_some() {
                        return Err(syntax(line, "duplicate `v:` line"));
                    }
                    v = Some(parse_spec(value, line)?);
                }
                other => return Err(syntax(line, format!("unknown key `{other}`"))),
            }
        }
        let h = h.ok_or_else(|| syntax(last_line + 1, "missing `h:` line"))?;
        let v = v.ok_or_else(|| syntax(last_line + 1, "missing `v:` line"))?;
        let n = n_line.unwrap_or_else(|| h.max_label().max(v.max_label()));
        let h = build("h", h, n)?;
        let v = build("v", v, n)?;
        Origami::new(h, v)
    }

    /// Builds from two inline permutation specs, as used by `--h`/`--v`.
    pub fn parse_pair(h: &str, v: &str, n: Option<usize>) -> Result<Origami, OrigamiError> {
        let mut text = String::new();
        if let Some(n) = n {
            text.push_str(&format!("n: {n}\n"));
        }
        text.push_str(&format!("h: {h}\nv: {v}\n"));
        Origami::parse(&text)
    }
}

impl FromStr for Origami {
    type Err = OrigamiError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Origami::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_square_torus() {
        let o = Origami::parse("h: 1\nv: 1").unwrap();
        assert_eq!(o, Origami::torus());
    }

    #[test]
    fn cycle_notation_with_omitted_fixed_points() {
        let o = Origami::parse("h: (1 2)(3)\nv: (1 3)").unwrap();
        assert_eq!(o.n(), 3);
        assert_eq!(o.h().to_string(), "(1 2)");
        assert_eq!(o.v().to_string(), "(1 3)");
    }

    #[test]
    fn pair_transitive_even_if_v_is_not() {
        let o = Origami::parse("h: 2 1\nv: 1 2").unwrap();
        assert_eq!(o.n(), 2);
    }

    #[test]
    fn explicit_n_adds_fixed_points() {
        let o = Origami::parse("n: 3\nh: (1 2 3)\nv: ()").unwrap();
        assert_eq!(o.n(), 3);
        assert!(o.v().is_identity());
    }

    #[test]
    fn distinct_diagnostics() {
        let e = Origami::parse("h: 1 2\nv: (1 x)").unwrap_err();
        assert!(matches!(e, OrigamiError::Syntax { line: 2, .. }), "{e}");
        let e = Origami::parse("h: 1 1\nv: 1 2").unwrap_err();
        assert!(matches!(e, OrigamiError::NotBijective(_)), "{e}");
        let e = Origami::parse("h: 1 2\nv: 1 2").unwrap_err();
        assert!(matches!(e, OrigamiError::Intransitive { .. }), "{e}");
        let e = Origami::parse("h: (1 2\nv: 1 2").unwrap_err();
        assert!(matches!(e, OrigamiError::Syntax { line: 1, .. }), "{e}");
        let e = Origami::parse("h: 1").unwrap_err();
        assert!(matches!(e, OrigamiError::Syntax { line: 2, .. }), "{e}");
        let e = Origami::parse("x: 1\nh: 1\nv: 1").unwrap_err();
        assert!(matches!(e, OrigamiError::Syntax { line: 1, .. }), "{e}");
        let e = Origami::parse("n: 2\nh: 1\nv: 1").unwrap_err();
        assert!(matches!(e, OrigamiError::NotBijective(_)), "{e}");
    }

    #[test]
    fn serialization_round_trip() {
        let o = Origami::parse("# comment\n\nh: (1 2 3)\nv: (1 4)\n").unwrap();
        let text = o.to_string();
        assert_eq!(text, "h: 2 3 1 4\nv: 4 2 3 1\n");
        assert_eq!(text.parse::<Origami>().unwrap(), o);
    }
}
