//! Parser for `--poly` strings such as `2x^9 + x^8 - x + 1`.

/// Integer coefficients `a_0, ..., a_d`; repeated powers are summed.
pub fn parse_poly(input: &str) -> Result<Vec<i64>, String> {
    let words: Vec<&str> = input.split_whitespace().collect();
    let is_op = |c: char| matches!(c, '+' | '-' | '*');
    for w in words.windows(2) {
        if !w[0].ends_with(is_op) && !w[1].starts_with(is_op) {
            return Err(format!(
                "missing operator between {:?} and {:?}",
                w[0], w[1]
            ));
        }
    }
    let s = words.concat();
    if s.is_empty() {
        return Err("empty polynomial".into());
    }
    let mut coeffs: Vec<i64> = Vec::new();
    let mut rest = s.as_str();
    let mut first = true;
    while !rest.is_empty() {
        let (sign, body) = match rest.as_bytes()[0] {
            b'+' if !first => (1, &rest[1..]),
            b'-' => (-1, &rest[1..]),
            _ if first => (1, rest),
            _ => return Err(format!("expected + or - before {rest:?}")),
        };
        first = false;
        let end = body.find(['+', '-']).unwrap_or(body.len());
        let (term, tail) = body.split_at(end);
        let (c, e) = parse_term(term)?;
        if coeffs.len() <= e {
            coeffs.resize(e + 1, 0);
        }
        coeffs[e] = coeffs[e]
            .checked_add(sign * c)
            .ok_or_else(|| format!("coefficient overflow in {term:?}"))?;
        rest = tail;
    }
    Ok(coeffs)
}

fn parse_term(term: &str) -> Result<(i64, usize), String> {
    if term.is_empty() {
        return Err("empty term".into());
    }
    let Some(x) = term.find('x') else {
        return parse_int(term).map(|c| (c, 0));
    };
    let (head, tail) = term.split_at(x);
    let head = head.strip_suffix('*').unwrap_or(head);
    let c = if head.is_empty() { 1 } else { parse_int(head)? };
    let e = match &tail[1..] {
        "" => 1,
        pow => {
            let digits = pow
                .strip_prefix('^')
                .ok_or_else(|| format!("bad exponent in {term:?}"))?;
            digits
                .parse::<usize>()
                .map_err(|_| format!("bad exponent in {term:?}"))?
        }
    };
    if e > 4096 {
        return Err(format!("degree {e} is too large"));
    }
    Ok((c, e))
}

fn parse_int(s: &str) -> Result<i64, String> {
    s.parse::<i64>()
        .map_err(|_| format!("bad coefficient {s:?}"))
}
