use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Mat;

/// A word in the generators: `(generator index, nonzero exponent)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Word(pub Vec<(usize, i64)>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn generator(i: usize, e: i64) -> Word {
        Word(vec![(i, e)])
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        out.extend(other.0.iter().copied());
        Word(out).reduced()
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Vec::new();
        for _ in 0..e.unsigned_abs() {
            out.extend(base.0.iter().copied());
        }
        Word(out).reduced()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&(g, e)| (g, -e)).collect())
    }

    /// Merges adjacent powers of the same generator and drops zero exponents.
    pub fn reduced(self) -> Word {
        let mut out: Vec<(usize, i64)> = Vec::new();
        for (g, e) in self.0 {
            match out.last_mut() {
                Some((lg, le)) if *lg == g => {
                    *le += e;
                    if *le == 0 {
                        out.pop();
                    }
                }
                _ if e != 0 => out.push((g, e)),
                _ => {}
            }
        }
        Word(out)
    }

    /// Bitmask of the generators occurring in the word.
    pub fn support(&self) -> u64 {
        self.0.iter().fold(0, |acc, &(g, _)| acc | (1 << g))
    }

    fn render(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|&(g, e)| {
                if e == 1 {
                    names[g].clone()
                } else {
                    format!("{}^{}", names[g], e)
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Product of the word under `images`, left to right.
pub fn eval_word(w: &Word, images: &[Mat]) -> Result<Mat> {
    let first = images
        .first()
        .ok_or_else(|| Error::PreconditionViolated("no generator images".into()))?;
    let mut acc = Mat::identity(first.ring(), first.n());
    for &(g, e) in &w.0 {
        let img = images
            .get(g)
            .ok_or_else(|| Error::PreconditionViolated(format!("generator {g} has no image")))?;
        let p = img
            .pow(e)
            .map_err(|_| Error::NonInvertibleImage(format!("generator {g}")))?;
        acc = acc.mul(&p);
    }
    Ok(acc)
}

/// Generators plus relators, each relator a two-sided word equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<(Word, Word)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelatorCheck {
    pub relator: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PresentationCheck {
    pub holds: bool,
    pub relators: Vec<RelatorCheck>,
    /// Index of the first failing relator.
    pub first_failure: Option<usize>,
}

impl Presentation {
    pub fn relator_string(&self, i: usize) -> String {
        let (l, r) = &self.relators[i];
        format!("{} = {}", l.render(&self.generators), r.render(&self.generators))
    }

    /// Evaluates every relator under `images`.
    pub fn check(&self, images: &[Mat]) -> Result<PresentationCheck> {
        if images.len() != self.generators.len() {
            return Err(Error::PreconditionViolated(format!(
                "{} images for {} generators",
                images.len(),
                self.generators.len()
            )));
        }
        let mut relators = Vec::new();
        let mut first_failure = None;
        for (i, (l, r)) in self.relators.iter().enumerate() {
            let holds = eval_word(l, images)? == eval_word(r, images)?;
            if !holds && first_failure.is_none() {
                first_failure = Some(i);
            }
            relators.push(RelatorCheck {
                relator: self.relator_string(i),
                holds,
            });
        }
        Ok(PresentationCheck {
            holds: first_failure.is_none(),
            relators,
            first_failure,
        })
    }

    /// Parses `gens: a, b; rel: a^7 = 1; rel: (a b)^3 = b^2`.
    ///
    /// A relator with several `=` signs is read as a chain of equalities
    /// between neighbours. Words are products of generators, `1` and
    /// parenthesised subwords, each optionally raised to an integer power.
    pub fn parse(text: &str) -> Result<Presentation> {
        let mut generators: Vec<String> = Vec::new();
        let mut relators = Vec::new();
        for clause in text.split(';').map(str::trim).filter(|c| !c.is_empty()) {
            let (key, body) = clause
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected `key: ...` in {clause:?}")))?;
            match key.trim() {
                "gens" => {
                    for g in body.split(',').map(str::trim) {
                        if g.is_empty() || !g.chars().all(|c| c.is_alphanumeric() || c == '_') {
                            return Err(Error::Parse(format!("bad generator name {g:?}")));
                        }
                        if g == "1" || generators.iter().any(|x| x == g) {
                            return Err(Error::Parse(format!("duplicate or reserved generator {g:?}")));
                        }
                        generators.push(g.to_string());
                    }
                }
                "rel" => {
                    let sides: Vec<Word> = body
                        .split('=')
                        .map(|s| WordParser::new(s, &generators).parse())
                        .collect::<Result<_>>()?;
                    if sides.len() < 2 {
                        relators.push((sides[0].clone(), Word::empty()));
                    }
                    for pair in sides.windows(2) {
                        relators.push((pair[0].clone(), pair[1].clone()));
                    }
                }
                other => return Err(Error::Parse(format!("unknown clause {other:?}"))),
            }
        }
        if generators.is_empty() {
            return Err(Error::Parse("no generators declared".into()));
        }
        Ok(Presentation {
            generators,
            relators,
        })
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gens: {}", self.generators.join(", "))?;
        for (l, r) in &self.relators {
            write!(
                f,
                "; rel: {} = {}",
                l.render(&self.generators),
                r.render(&self.generators)
            )?;
        }
        Ok(())
    }
}

struct WordParser<'a> {
    tokens: Vec<String>,
    pos: usize,
    names: &'a [String],
}

impl<'a> WordParser<'a> {
    fn new(s: &str, names: &'a [String]) -> Self {
        let mut tokens = Vec::new();
        let mut chars = s.chars().peekable();
        while let Some(&c) = chars.peek() {
            if c.is_whitespace() {
                chars.next();
            } else if c.is_alphanumeric() || c == '_' {
                let mut t = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_alphanumeric() || c == '_' {
                        t.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(t);
            } else if c == '-' {
                // Part of an exponent.
                chars.next();
                let mut t = String::from("-");
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        t.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(t);
            } else {
                tokens.push(c.to_string());
                chars.next();
            }
        }
        WordParser {
            tokens,
            pos: 0,
            names,
        }
    }

    fn peek(&self) -> Option<&str> {
        self.tokens.get(self.pos).map(String::as_str)
    }

    fn parse(mut self) -> Result<Word> {
        let w = self.product()?;
        match self.peek() {
            None => Ok(w),
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
        }
    }

    fn product(&mut self) -> Result<Word> {
        let mut w = Word::empty();
        while let Some(t) = self.peek() {
            if t == ")" {
                break;
            }
            let f = self.factor()?;
            w = w.concat(&f);
        }
        Ok(w)
    }

    fn factor(&mut self) -> Result<Word> {
        let t = self.peek().unwrap().to_string();
        self.pos += 1;
        let base = if t == "(" {
            let inner = self.product()?;
            if self.peek() != Some(")") {
                return Err(Error::Parse("unbalanced parentheses".into()));
            }
            self.pos += 1;
            inner
        } else if t == "1" {
            Word::empty()
        } else if let Some(i) = self.names.iter().position(|n| *n == t) {
            Word::generator(i, 1)
        } else {
            return Err(Error::Parse(format!("undeclared generator {t:?}")));
        };
        if self.peek() == Some("^") {
            self.pos += 1;
            let e: i64 = self
                .peek()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Parse("expected integer exponent".into()))?;
            self.pos += 1;
            return Ok(base.pow(e));
        }
        Ok(base)
    }
}
