//! Recursive-descent parser for the prefix formula grammar.
//!
//! ```text
//! formula := ident | ident "(" formula ("," formula)* ")"
//! ident   := [A-Za-z_][A-Za-z0-9_']*
//! ```

use super::{Formula, Signature, SyntaxError};

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    sig: &'a Signature,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() {
            match bytes[self.pos] {
                b' ' | b'\t' | b'\r' | b'\n' => self.pos += 1,
                b'#' => {
                    while self.pos < bytes.len() && bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                _ => break,
            }
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.as_bytes().get(self.pos).copied()
    }

    fn unexpected(&mut self, expected: &'static str) -> SyntaxError {
        let found = self.src[self.pos..].chars().next();
        SyntaxError::Unexpected {
            offset: self.pos,
            expected,
            found,
        }
    }

    fn ident(&mut self) -> Result<(usize, &'a str), SyntaxError> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        match bytes.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() || *c == b'_' => self.pos += 1,
            _ => return Err(self.unexpected("identifier")),
        }
        while let Some(c) = bytes.get(self.pos) {
            if c.is_ascii_alphanumeric() || *c == b'_' || *c == b'\'' {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((start, &self.src[start..self.pos]))
    }

    fn formula(&mut self) -> Result<Formula, SyntaxError> {
        let (start, name) = self.ident()?;
        if self.peek() == Some(b'(') {
            let open = self.pos;
            self.pos += 1;
            let mut args = vec![self.formula()?];
            loop {
                match self.peek() {
                    Some(b',') => {
                        self.pos += 1;
                        args.push(self.formula()?);
                    }
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    None => return Err(SyntaxError::Unbalanced { offset: open }),
                    Some(_) => return Err(self.unexpected("',' or ')'")),
                }
            }
            match self.sig.arity(name) {
                None => Err(SyntaxError::UndeclaredConnective {
                    name: name.to_string(),
                    offset: start,
                }),
                Some(a) if a != args.len() => Err(SyntaxError::ArityMismatch {
                    name: name.to_string(),
                    expected: a,
                    found: args.len(),
                    offset: Some(start),
                }),
                Some(_) => Ok(Formula::app(name, args)),
            }
        } else {
            match self.sig.arity(name) {
                None => Ok(Formula::var(name)),
                Some(0) => Ok(Formula::constant(name)),
                Some(a) => Err(SyntaxError::ArityMismatch {
                    name: name.to_string(),
                    expected: a,
                    found: 0,
                    offset: Some(start),
                }),
            }
        }
    }

    fn finish(&mut self) -> Result<(), SyntaxError> {
        match self.peek() {
            None => Ok(()),
            Some(b')') => Err(SyntaxError::Unbalanced { offset: self.pos }),
            Some(_) => Err(self.unexpected("end of input")),
        }
    }
}

/// Parses one formula over `sig`.
pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula, SyntaxError> {
    let mut p = Parser { src: text, pos: 0, sig };
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

/// Parses a comma-separated list; blank input (or a lone `-`) is the empty list.
pub fn parse_formula_list(text: &str, sig: &Signature) -> Result<Vec<Formula>, SyntaxError> {
    let mut p = Parser { src: text, pos: 0, sig };
    match p.peek() {
        None => return Ok(Vec::new()),
        Some(b'-') => {
            p.pos += 1;
            p.finish()?;
            return Ok(Vec::new());
        }
        _ => {}
    }
    let mut out = vec![p.formula()?];
    while p.peek() == Some(b',') {
        p.pos += 1;
        out.push(p.formula()?);
    }
    p.finish()?;
    Ok(out)
}

/// Canonical printing; inverse of [`parse_formula`].
pub fn print_formula(f: &Formula) -> String {
    f.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        Signature::from_pairs([("and", 2), ("neg", 1), ("top", 0)]).unwrap()
    }

    #[test]
    fn parses_nested_application() {
        let f = parse_formula("and(p, neg(q))", &sig()).unwrap();
        assert_eq!(
            f,
            Formula::binary("and", Formula::var("p"), Formula::unary("neg", Formula::var("q")))
        );
        assert_eq!(print_formula(&f), "and(p, neg(q))");
    }

    #[test]
    fn nullary_connective_and_variables() {
        assert_eq!(parse_formula("top", &sig()).unwrap(), Formula::constant("top"));
        assert_eq!(parse_formula(" q' ", &sig()).unwrap(), Formula::var("q'"));
    }

    #[test]
    fn errors_carry_offsets() {
        let e = parse_formula("and(p)", &sig()).unwrap_err();
        assert!(matches!(e, SyntaxError::ArityMismatch { offset: Some(0), .. }));
        let e = parse_formula("neg(and(p, q)", &sig()).unwrap_err();
        assert!(matches!(e, SyntaxError::Unbalanced { offset: 3 }));
        let e = parse_formula("neg(p))", &sig()).unwrap_err();
        assert!(matches!(e, SyntaxError::Unbalanced { offset: 6 }));
        let e = parse_formula("f(p)", &sig()).unwrap_err();
        assert!(matches!(e, SyntaxError::UndeclaredConnective { offset: 0, .. }));
        let e = parse_formula("neg", &sig()).unwrap_err();
        assert!(matches!(e, SyntaxError::ArityMismatch { found: 0, .. }));
        let e = parse_formula("p $", &sig()).unwrap_err();
        assert!(matches!(e, SyntaxError::Unexpected { offset: 2, .. }));
    }

    #[test]
    fn lists_and_comments() {
        assert!(parse_formula_list("  ", &sig()).unwrap().is_empty());
        assert!(parse_formula_list("-", &sig()).unwrap().is_empty());
        let l = parse_formula_list("p, neg(p) # trailing", &sig()).unwrap();
        assert_eq!(l.len(), 2);
    }
}
