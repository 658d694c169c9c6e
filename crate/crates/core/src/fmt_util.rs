/// True when the printed coefficient needs parentheses before `*monomial`.
pub(crate) fn is_compound(s: &str) -> bool {
    s.char_indices().any(|(i, ch)| i > 0 && (ch == '+' || ch == '-'))
}

/// Renders a sum from `(coefficient text, monomial text)` pairs in print order.
/// Zero coefficients must already be filtered out.
pub(crate) fn render_sum(terms: &[(String, String)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (coeff, mono)) in terms.iter().enumerate() {
        let piece = if mono.is_empty() {
            coeff.clone()
        } else if coeff == "1" {
            mono.clone()
        } else if coeff == "-1" {
            format!("-{mono}")
        } else if is_compound(coeff) {
            format!("({coeff})*{mono}")
        } else {
            format!("{coeff}*{mono}")
        };
        if k > 0 && !piece.starts_with('-') {
            out.push('+');
        }
        out.push_str(&piece);
    }
    out
}

pub(crate) fn power(var: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{k}"),
    }
}

/// Joins nonempty monomial factors with `*`.
pub(crate) fn join_factors(parts: &[String]) -> String {
    parts
        .iter()
        .filter(|p| !p.is_empty())
        .cloned()
        .collect::<Vec<_>>()
        .join("*")
}
