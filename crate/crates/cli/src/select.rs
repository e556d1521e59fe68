use seqctl::{Analysis, State};

use crate::CliError;

/// Resolves an attractor selector to an id.
///
/// Accepted forms, tried in order:
/// `id:N`, `state:BITS`, a label, a bit-string of exactly n digits naming
/// one member state, and a bare id.
pub fn resolve_attractor(analysis: &Analysis, text: &str) -> Result<usize, CliError> {
    let unknown = || CliError::Input(format!("unknown attractor `{text}`"));
    let n = analysis.network().len();
    let by_id = |id: &str| {
        id.parse::<usize>()
            .ok()
            .filter(|&i| i < analysis.attractors().len())
            .ok_or_else(unknown)
    };
    let by_state = |bits: &str| {
        State::parse(bits)
            .filter(|s| s.width() == n)
            .and_then(|s| analysis.attractors().iter().find(|a| a.contains(s)))
            .map(|a| a.id)
            .ok_or_else(unknown)
    };
    if let Some(id) = text.strip_prefix("id:") {
        return by_id(id);
    }
    if let Some(bits) = text.strip_prefix("state:") {
        return by_state(bits);
    }
    if let Some(a) = analysis
        .attractors()
        .iter()
        .find(|a| a.name.as_deref() == Some(text))
    {
        return Ok(a.id);
    }
    if text.len() == n && text.chars().all(|c| c == '0' || c == '1') {
        return by_state(text);
    }
    by_id(text)
}

/// Parses a labels file: `name = selector` per line, `#` comments.
pub fn parse_labels(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut labels = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (name, selector) = line
            .split_once('=')
            .map(|(a, b)| (a.trim(), b.trim()))
            .filter(|(a, b)| !a.is_empty() && !b.is_empty())
            .ok_or_else(|| {
                CliError::Input(format!("labels line {}: expected `name = selector`", i + 1))
            })?;
        labels.push((name.to_string(), selector.to_string()));
    }
    Ok(labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use seqctl::{parse_network, DEFAULT_MAX_NODES};

    fn example() -> Analysis {
        let g = parse_network("x1 = x2\nx2 = x1\nx3 = x2 & x3").unwrap();
        Analysis::new(g, DEFAULT_MAX_NODES).unwrap()
    }

    #[test]
    fn selector_forms() {
        let mut a = example();
        a.set_name(2, "high").unwrap();
        assert_eq!(resolve_attractor(&a, "1").unwrap(), 1);
        assert_eq!(resolve_attractor(&a, "id:0").unwrap(), 0);
        assert_eq!(resolve_attractor(&a, "110").unwrap(), 1);
        assert_eq!(resolve_attractor(&a, "state:111").unwrap(), 2);
        assert_eq!(resolve_attractor(&a, "high").unwrap(), 2);
        assert!(resolve_attractor(&a, "3").is_err());
        assert!(resolve_attractor(&a, "010").is_err());
        assert!(resolve_attractor(&a, "low").is_err());
    }

    #[test]
    fn labels_file() {
        let labels = parse_labels("# phenotypes\nrest = 000\n\nhigh = id:2 # on\n").unwrap();
        assert_eq!(
            labels,
            [
                ("rest".to_string(), "000".to_string()),
                ("high".to_string(), "id:2".to_string())
            ]
        );
        assert!(parse_labels("rest 000").is_err());
    }
}
