use crate::scalar::ScalarRat;

/// Joins `coefficient * monomial` terms into a signed sum. An empty monomial
/// string marks the constant term.
pub(crate) fn format_sum<I>(terms: I) -> String
where
    I: IntoIterator<Item = (ScalarRat, String)>,
{
    let terms: Vec<_> = terms.into_iter().collect();
    if terms.is_empty() {
        return "0".to_string();
    }
    let single = terms.len() == 1;
    let mut out = String::new();
    for (i, (c, m)) in terms.iter().enumerate() {
        let neg = c.is_atomic() && c.is_negative();
        let c = if neg { -c } else { c.clone() };
        let body = if m.is_empty() {
            if c.is_atomic() || single {
                c.to_string()
            } else {
                format!("({c})")
            }
        } else if c.is_one() {
            m.clone()
        } else if c.is_atomic() {
            format!("{c}*{m}")
        } else {
            format!("({c})*{m}")
        };
        match (i, neg) {
            (0, false) => out.push_str(&body),
            (0, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    out
}
