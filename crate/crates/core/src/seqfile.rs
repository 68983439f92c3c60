//! Plain-text sequence files.
//!
//! ```text
//! # optional comments
//! !horizon 100
//! 0
//! 4
//! 9
//! ```
//!
//! The `!horizon N` directive must come before any element. Elements are
//! decimal naturals, one per line, strictly ascending and at most `N`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::intsets::Window;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqFileError {
    #[error("line {line}: missing `!horizon N` directive before the first element")]
    MissingHorizon { line: usize },
    #[error("no `!horizon N` directive found")]
    NoHorizon,
    #[error("line {line}: malformed directive `{text}`")]
    BadDirective { line: usize, text: String },
    #[error("line {line}: duplicate `!horizon` directive")]
    DuplicateHorizon { line: usize },
    #[error("line {line}: `{text}` is not a decimal natural")]
    BadNumber { line: usize, text: String },
    #[error("line {line}: {next} does not exceed previous element {prev}")]
    NotAscending { line: usize, prev: u64, next: u64 },
    #[error("line {line}: element {element} exceeds horizon {horizon}")]
    BeyondHorizon {
        line: usize,
        element: u64,
        horizon: u64,
    },
}

pub fn parse(text: &str) -> Result<Window, SeqFileError> {
    let mut horizon: Option<u64> = None;
    let mut elements: Vec<u64> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('!') {
            let mut parts = rest.split_whitespace();
            let value = match (parts.next(), parts.next(), parts.next()) {
                (Some("horizon"), Some(v), None) => v.parse::<u64>().ok(),
                _ => None,
            };
            let Some(value) = value else {
                return Err(SeqFileError::BadDirective {
                    line,
                    text: trimmed.to_string(),
                });
            };
            if horizon.is_some() {
                return Err(SeqFileError::DuplicateHorizon { line });
            }
            horizon = Some(value);
            continue;
        }
        let Some(h) = horizon else {
            return Err(SeqFileError::MissingHorizon { line });
        };
        let value: u64 = trimmed.parse().map_err(|_| SeqFileError::BadNumber {
            line,
            text: trimmed.to_string(),
        })?;
        if let Some(&prev) = elements.last() {
            if value <= prev {
                return Err(SeqFileError::NotAscending {
                    line,
                    prev,
                    next: value,
                });
            }
        }
        if value > h {
            return Err(SeqFileError::BeyondHorizon {
                line,
                element: value,
                horizon: h,
            });
        }
        elements.push(value);
    }
    let horizon = horizon.ok_or(SeqFileError::NoHorizon)?;
    Ok(Window::new(elements, horizon).expect("validated while parsing"))
}

pub fn render(w: &Window) -> String {
    let mut out = String::with_capacity(16 + w.len() * 8);
    let _ = writeln!(out, "!horizon {}", w.horizon());
    for x in w.iter() {
        let _ = writeln!(out, "{x}");
    }
    out
}

/// Same as [`render`] with leading `#` comment lines.
pub fn render_with_comments(w: &Window, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        for line in c.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
    out.push_str(&render(w));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments() {
        let w = parse("# squares\n!horizon 10\n0\n1\n\n4\n# tail\n9\n").unwrap();
        assert_eq!(w.elements(), &[0, 1, 4, 9]);
        assert_eq!(w.horizon(), 10);
    }

    #[test]
    fn requires_horizon() {
        assert_eq!(
            parse("1\n2\n"),
            Err(SeqFileError::MissingHorizon { line: 1 })
        );
        assert_eq!(parse("# nothing\n"), Err(SeqFileError::NoHorizon));
        assert!(matches!(
            parse("!horizon\n"),
            Err(SeqFileError::BadDirective { line: 1, .. })
        ));
        assert_eq!(
            parse("!horizon 3\n!horizon 4\n"),
            Err(SeqFileError::DuplicateHorizon { line: 2 })
        );
    }

    #[test]
    fn reports_offending_pair() {
        assert_eq!(
            parse("!horizon 10\n3\n5\n5\n"),
            Err(SeqFileError::NotAscending {
                line: 4,
                prev: 5,
                next: 5
            })
        );
        assert_eq!(
            parse("!horizon 10\n11\n"),
            Err(SeqFileError::BeyondHorizon {
                line: 2,
                element: 11,
                horizon: 10
            })
        );
        assert!(matches!(
            parse("!horizon 10\n-1\n"),
            Err(SeqFileError::BadNumber { line: 2, .. })
        ));
    }

    #[test]
    fn render_round_trips() {
        let w = Window::new(vec![0, 2, 7], 9).unwrap();
        assert_eq!(parse(&render(&w)).unwrap(), w);
        let text = render_with_comments(&w, &["built by test".to_string()]);
        assert!(text.starts_with("# built by test\n!horizon 9\n"));
        assert_eq!(parse(&text).unwrap(), w);
    }
}
