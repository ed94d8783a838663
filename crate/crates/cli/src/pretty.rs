//! Rendering series in the syntax accepted by [`crate::expr`].

use ncinvert::freealg::{NCSeries, Word};
use ncinvert::rings::Ring;

fn monomial(w: &Word, vars: &[String]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let letters = w.letters();
    let mut i = 0;
    while i < letters.len() {
        let j = (i..letters.len())
            .find(|&j| letters[j] != letters[i])
            .unwrap_or(letters.len());
        let name = &vars[letters[i] as usize];
        parts.push(if j - i == 1 {
            name.clone()
        } else {
            format!("{name}^{}", j - i)
        });
        i = j;
    }
    parts.join("*")
}

/// Terms in degree-lexicographic order, e.g. `x - y*x + 3/2*x*y^2`.
pub fn format_series<R: Ring>(s: &NCSeries<R>, vars: &[String]) -> String {
    let ring = s.ring();
    let mut out = String::new();
    for (w, c) in s.terms() {
        let text = ring.format(c);
        let (negative, magnitude) = match text.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, text),
        };
        let body = match (w.is_empty(), magnitude.as_str()) {
            (true, _) => magnitude,
            (false, "1") => monomial(w, vars),
            (false, m) => format!("{m}*{}", monomial(w, vars)),
        };
        match (out.is_empty(), negative) {
            (true, false) => out.push_str(&body),
            (true, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (false, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (false, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// A complete map file: `vars:` header and one component per line.
pub fn format_map<R: Ring>(components: &[NCSeries<R>], vars: &[String]) -> String {
    let mut out = format!("vars: {}\n", vars.join(", "));
    for c in components {
        out.push_str(&format_series(c, vars));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::source::MapSource;
    use ncinvert::rings::Rationals;

    #[test]
    fn renders_runs_and_signs() {
        let vars: Vec<String> = vec!["x".into(), "y".into()];
        let src = MapSource::parse("-x*x*y + 3/2*y*x - 7; y - 1/3*y*y*y", Some(&vars)).unwrap();
        let s = src.series(&Rationals, 5).unwrap();
        assert_eq!(format_series(&s[0], &vars), "-7 + 3/2*y*x - x^2*y");
        assert_eq!(format_series(&s[1], &vars), "y - 1/3*y^3");
        assert_eq!(format_series(&s[0].zero_like(), &vars), "0");
        let again = MapSource::parse(&format_map(&s, &vars), None)
            .unwrap()
            .series(&Rationals, 5)
            .unwrap();
        assert_eq!(again, s);
    }
}
