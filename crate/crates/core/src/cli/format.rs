//! Locale-free CSV output with 12 significant digits.

/// `%.12g`-style rendering: fixed notation for exponents in [-5, 12),
/// scientific otherwise, trailing zeros trimmed, `-0` printed as `0`.
pub fn number(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{v:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Accumulates rows in order; rendered once at the end.
#[derive(Debug, Default)]
pub struct Csv {
    out: String,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        let mut out = header.join(",");
        out.push('\n');
        Self { out }
    }

    pub fn row(&mut self, fields: &[Field]) {
        let line: Vec<String> = fields.iter().map(Field::render).collect();
        self.out.push_str(&line.join(","));
        self.out.push('\n');
    }

    pub fn finish(self) -> String {
        self.out
    }
}

#[derive(Clone, Debug)]
pub enum Field {
    Text(&'static str),
    Num(f64),
    Int(i64),
}

impl Field {
    fn render(&self) -> String {
        match self {
            Field::Text(s) => (*s).to_string(),
            Field::Num(v) => number(*v),
            Field::Int(i) => i.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(number(0.25), "0.25");
        assert_eq!(number(-0.0), "0");
        assert_eq!(number(1.0), "1");
        assert_eq!(number(std::f64::consts::PI), "3.14159265359");
        assert_eq!(number(1.0 / 3.0), "0.333333333333");
        assert_eq!(number(123456.789), "123456.789");
        assert_eq!(number(1.5e-7), "1.5e-07");
        assert_eq!(number(-2.5e13), "-2.5e+13");
        assert_eq!(number(0.0001), "0.0001");
        assert_eq!(number(999999999999.9), "1e+12");
    }

    #[test]
    fn rows_in_order() {
        let mut csv = Csv::new(&["a", "b"]);
        csv.row(&[Field::Text("x"), Field::Num(0.5)]);
        csv.row(&[Field::Int(-3), Field::Num(2.0)]);
        assert_eq!(csv.finish(), "a,b\nx,0.5\n-3,2\n");
    }
}
