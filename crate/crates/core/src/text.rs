//! Text formats for fields, elements, polynomials and matrices.
//!
//! ```text
//! field    := prime ("^" k)*                 "5", "5^2", "5^2^2"
//! element  := integer | "[" element ("," element)* "]"
//! poly     := ["q="] field ";" [element ("," element)*]
//! matrix   := element "," element ";" element "," element
//! ```
//!
//! Integers may be negative and are reduced modulo the characteristic; a
//! bare integer is accepted in an extension field and embedded from the
//! prime field. Polynomials are printed without the `q=` prefix.

use crate::error::{Error, Result};
use crate::field::{FEl, Field};
use crate::moebius::Mat2;
use crate::poly::Poly;

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
    offset: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str, offset: usize) -> Self {
        Cursor {
            s: s.as_bytes(),
            pos: 0,
            offset,
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.offset + self.pos, msg)
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn done(&mut self) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.err(format!("unexpected '{}'", c as char))),
        }
    }

    fn integer(&mut self) -> Result<i128> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
        text.parse::<i128>().map_err(|_| {
            let msg = if text.is_empty() || text == "-" {
                "expected an integer".to_string()
            } else {
                format!("integer out of range: {text}")
            };
            Error::parse(self.offset + start, msg)
        })
    }

    fn field(&mut self) -> Result<Field> {
        let start = self.pos;
        let p = self.integer()?;
        let p = u64::try_from(p).map_err(|_| Error::parse(self.offset + start, "characteristic must be positive"))?;
        let mut field = Field::prime(p).map_err(|e| Error::parse(self.offset + start, e.to_string()))?;
        while self.eat(b'^') {
            let at = self.pos;
            let k = self.integer()?;
            let k = usize::try_from(k)
                .ok()
                .filter(|&k| k >= 1)
                .ok_or_else(|| Error::parse(self.offset + at, "extension degree must be at least 1"))?;
            field = field
                .extension(k)
                .map_err(|e| Error::parse(self.offset + at, e.to_string()))?;
        }
        Ok(field)
    }

    fn element(&mut self, field: &Field) -> Result<FEl> {
        self.skip_ws();
        if self.peek() == Some(b'[') {
            let at = self.pos;
            self.pos += 1;
            let base = field
                .base()
                .ok_or_else(|| Error::parse(self.offset + at, "prime-field elements take no brackets"))?;
            let mut coords = vec![self.element(base)?];
            while self.eat(b',') {
                coords.push(self.element(base)?);
            }
            self.expect(b']')?;
            return field
                .from_coords(&coords)
                .map_err(|e| Error::parse(self.offset + at, e.to_string()));
        }
        let n = self.integer()?;
        let p = field.characteristic() as i128;
        Ok(field.from_int(n.rem_euclid(p) as i64))
    }
}

pub fn parse_field(s: &str) -> Result<Field> {
    let mut cur = Cursor::new(s, 0);
    let f = cur.field()?;
    cur.done()?;
    Ok(f)
}

pub fn parse_element(field: &Field, s: &str) -> Result<FEl> {
    let mut cur = Cursor::new(s, 0);
    let e = cur.element(field)?;
    cur.done()?;
    Ok(e)
}

pub fn parse_poly(s: &str) -> Result<Poly> {
    let mut cur = Cursor::new(s, 0);
    cur.skip_ws();
    if cur.s[cur.pos..].starts_with(b"q=") {
        cur.pos += 2;
    }
    let field = cur.field()?;
    cur.expect(b';')?;
    let mut coeffs = Vec::new();
    cur.skip_ws();
    if cur.peek().is_some() {
        coeffs.push(cur.element(&field)?);
        while cur.eat(b',') {
            coeffs.push(cur.element(&field)?);
        }
    }
    cur.done()?;
    Poly::new(&field, coeffs)
}

pub fn format_poly(f: &Poly) -> String {
    f.to_string()
}

/// Parse `"a,b;c,d"` over `field`.
pub fn parse_matrix(field: &Field, s: &str) -> Result<Mat2> {
    let mut cur = Cursor::new(s, 0);
    let a = cur.element(field)?;
    cur.expect(b',')?;
    let b = cur.element(field)?;
    cur.expect(b';')?;
    let c = cur.element(field)?;
    cur.expect(b',')?;
    let d = cur.element(field)?;
    cur.done()?;
    Mat2::new(a, b, c, d)
}

pub fn format_matrix(m: &Mat2) -> String {
    m.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn poly_round_trips() {
        let f = parse_poly("5;3,1").unwrap();
        assert_eq!(f, Poly::from_ints(&Field::prime(5).unwrap(), &[3, 1]));
        assert_eq!(format_poly(&f), "5;3,1");
        assert_eq!(format_poly(&parse_poly("5;3,1,0").unwrap()), "5;3,1");
        assert_eq!(format_poly(&parse_poly("q=5;3,1").unwrap()), "5;3,1");
        assert_eq!(format_poly(&parse_poly("5;-2,1").unwrap()), "5;3,1");
        assert_eq!(format_poly(&parse_poly("5;").unwrap()), "5;");
        assert_eq!(format_poly(&parse_poly(" 5 ; 3 , 1 ").unwrap()), "5;3,1");
    }

    #[test]
    fn extension_polys() {
        let f = parse_poly("5^2;[1,0],[0,1]").unwrap();
        let f25 = Field::prime(5).unwrap().extension(2).unwrap();
        let y = f25.generator().unwrap();
        assert_eq!(f, Poly::new(&f25, vec![f25.one(), y]).unwrap());
        assert_eq!(format_poly(&f), "5^2;[1,0],[0,1]");
        assert_eq!(format_poly(&parse_poly("5^2;1,[0,1]").unwrap()), "5^2;[1,0],[0,1]");
        let tower = parse_poly("5^2^2;[[0,0],[1,0]],1").unwrap();
        assert_eq!(format_poly(&tower), "5^2^2;[[0,0],[1,0]],[[1,0],[0,0]]");
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert_eq!(parse_poly("4;1").unwrap_err(), Error::parse(0, "4 is not prime"));
        assert!(matches!(parse_poly("5,3,1"), Err(Error::Parse { pos: 1, .. })));
        assert!(matches!(parse_poly("5;3,,1"), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse_poly("5;[1,2]"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_poly("5^2;[1,2,3]"), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse_poly("5;1]"), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse_poly("5^0;1"), Err(Error::Parse { pos: 2, .. })));
    }

    #[test]
    fn matrices() {
        let f5 = Field::prime(5).unwrap();
        let m = parse_matrix(&f5, "1,1;1,-1").unwrap();
        assert_eq!(m, Mat2::from_ints(&f5, 1, 1, 1, 4).unwrap());
        assert_eq!(format_matrix(&m), "1,1;1,4");
        assert_eq!(parse_matrix(&f5, "1,2;2,4").unwrap_err(), Error::SingularMatrix);
        let f25 = f5.extension(2).unwrap();
        let m = parse_matrix(&f25, "[0,1],[0,1];-1,1").unwrap();
        assert_eq!(format_matrix(&m), "[0,1],[0,1];[4,0],[1,0]");
    }

    #[test]
    fn fields() {
        assert_eq!(parse_field("7").unwrap().order(), 7);
        assert_eq!(parse_field("3^2^2").unwrap().order(), 81);
        assert_eq!(parse_field("3^2^2").unwrap().order_spec(), "3^2^2");
        assert!(parse_field("9").is_err());
    }

    proptest! {
        #[test]
        fn format_then_parse_is_identity(c in proptest::collection::vec(0u128..49, 0..8)) {
            let f49 = Field::prime(7).unwrap().extension(2).unwrap();
            let f = Poly::new(&f49, c.iter().map(|&i| f49.from_index(i)).collect()).unwrap();
            prop_assert_eq!(parse_poly(&format_poly(&f)).unwrap(), f);
        }

        #[test]
        fn parse_then_format_is_canonical(c in proptest::collection::vec(-20i64..20, 0..8)) {
            let text = format!("11;{}", c.iter().map(i64::to_string).collect::<Vec<_>>().join(","));
            let text = if c.is_empty() { "11;".to_string() } else { text };
            let f = parse_poly(&text).unwrap();
            prop_assert_eq!(format_poly(&parse_poly(&format_poly(&f)).unwrap()), format_poly(&f));
            prop_assert_eq!(f, Poly::from_ints(&Field::prime(11).unwrap(), &c));
        }
    }
}
