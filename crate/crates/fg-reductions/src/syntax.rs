//! Shared reader for the `name { key: value; ... }` machine and instance files.

use crate::ReductionError;

#[derive(Debug, Clone)]
pub(crate) struct Field {
    pub key: String,
    pub value: String,
    pub line: usize,
}

fn err(line: usize, msg: impl Into<String>) -> ReductionError {
    ReductionError::Parse {
        line,
        msg: msg.into(),
    }
}

pub(crate) fn parse_block(text: &str, keyword: &str) -> Result<Vec<Field>, ReductionError> {
    // Strip comments but keep line structure.
    let cleaned: String = text
        .lines()
        .map(|l| match l.find("//") {
            Some(p) => &l[..p],
            None => l,
        })
        .collect::<Vec<_>>()
        .join("\n");
    let line_of = |pos: usize| cleaned[..pos].matches('\n').count() + 1;

    let start = cleaned
        .find(|c: char| !c.is_whitespace())
        .ok_or_else(|| err(1, "empty file"))?;
    let rest = &cleaned[start..];
    if !rest.starts_with(keyword) {
        return Err(err(line_of(start), format!("expected `{keyword}`")));
    }
    let open = start + keyword.len();
    let after = cleaned[open..].trim_start();
    if !after.starts_with('{') {
        return Err(err(line_of(open), "expected `{`"));
    }
    let body_start = cleaned.len() - after.len() + 1;
    let close = cleaned
        .rfind('}')
        .filter(|&c| c >= body_start)
        .ok_or_else(|| err(line_of(cleaned.len()), "missing `}`"))?;
    if !cleaned[close + 1..].trim().is_empty() {
        return Err(err(line_of(close + 1), "trailing text after `}`"));
    }

    let mut fields = Vec::new();
    let mut pos = body_start;
    for chunk in cleaned[body_start..close].split(';') {
        let chunk_start = pos;
        pos += chunk.len() + 1;
        if chunk.trim().is_empty() {
            continue;
        }
        let lead = chunk.len() - chunk.trim_start().len();
        let line = line_of(chunk_start + lead);
        let (key, value) = chunk
            .split_once(':')
            .ok_or_else(|| err(line, "expected `key: value`"))?;
        let key = key.trim();
        if key.is_empty() || !key.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(err(line, format!("bad field name `{key}`")));
        }
        fields.push(Field {
            key: key.to_string(),
            value: value.trim().to_string(),
            line,
        });
    }
    Ok(fields)
}

/// Splits a list such as `a, b c` on commas and whitespace.
pub(crate) fn words(value: &str) -> Vec<String> {
    value
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|w| !w.is_empty())
        .map(str::to_string)
        .collect()
}

pub(crate) fn single(f: &Field) -> Result<String, ReductionError> {
    let w = words(&f.value);
    if w.len() != 1 {
        return Err(err(f.line, format!("`{}` takes exactly one value", f.key)));
    }
    Ok(w.into_iter().next().unwrap())
}

/// Parses arrows `(a,b)->(c,d,e)`, optionally with `|` alternatives on the right.
pub(crate) fn arrows(f: &Field) -> Result<Vec<(Vec<String>, Vec<String>)>, ReductionError> {
    let s: String = f.value.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Vec::new();
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let rest_comma = rest.trim_start_matches(',');
        if rest_comma.is_empty() {
            break;
        }
        let (lhs, after) = tuple(rest_comma)
            .ok_or_else(|| err(f.line, format!("bad transition near `{rest_comma}`")))?;
        let mut after = after
            .strip_prefix("->")
            .ok_or_else(|| err(f.line, "expected `->`"))?;
        loop {
            let (rhs, next) = tuple(after)
                .ok_or_else(|| err(f.line, format!("bad transition target near `{after}`")))?;
            out.push((lhs.clone(), rhs));
            match next.strip_prefix('|') {
                Some(n) => after = n,
                None => {
                    rest = next;
                    break;
                }
            }
        }
    }
    Ok(out)
}

fn tuple(s: &str) -> Option<(Vec<String>, &str)> {
    let s = s.strip_prefix('(')?;
    let close = s.find(')')?;
    let parts: Vec<String> = s[..close].split(',').map(str::to_string).collect();
    if parts.iter().any(|p| p.is_empty()) {
        return None;
    }
    Some((parts, &s[close + 1..]))
}
