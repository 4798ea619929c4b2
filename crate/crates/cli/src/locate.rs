//! Maps a JSON path to the line and column of the string value stored
//! there, so semantic errors can point into the source text.

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Seg {
    Key(String),
    Index(usize),
}

pub type Path = Vec<Seg>;

pub fn key(k: &str) -> Seg {
    Seg::Key(k.to_string())
}

enum Frame {
    Object { key: Option<String>, expecting_key: bool },
    Array { index: usize },
}

/// 1-based (line, column) of the string value at `path`, or of the key
/// itself when the value there is not a string. Assumes `text` is valid JSON.
pub fn position(text: &str, path: &[Seg]) -> Option<(usize, usize)> {
    let mut stack: Vec<Frame> = Vec::new();
    let (mut line, mut col) = (1, 0);
    let mut chars = text.char_indices().peekable();
    let current = |stack: &[Frame]| -> Path {
        stack
            .iter()
            .map(|f| match f {
                Frame::Object { key, .. } => Seg::Key(key.clone().unwrap_or_default()),
                Frame::Array { index } => Seg::Index(*index),
            })
            .collect()
    };
    while let Some((start, c)) = chars.next() {
        if c == '\n' {
            line += 1;
            col = 0;
            continue;
        }
        col += 1;
        match c {
            '{' => stack.push(Frame::Object { key: None, expecting_key: true }),
            '[' => stack.push(Frame::Array { index: 0 }),
            '}' | ']' => {
                stack.pop();
            }
            ',' => match stack.last_mut() {
                Some(Frame::Array { index }) => *index += 1,
                Some(Frame::Object { expecting_key, .. }) => *expecting_key = true,
                None => {}
            },
            '"' => {
                let (token_line, token_col) = (line, col);
                let mut end = start + 1;
                let mut escaped = false;
                for (i, d) in chars.by_ref() {
                    col += 1;
                    end = i + d.len_utf8();
                    if escaped {
                        escaped = false;
                    } else if d == '\\' {
                        escaped = true;
                    } else if d == '"' {
                        break;
                    }
                }
                let raw = &text[start..end];
                if let Some(Frame::Object { key, expecting_key }) = stack.last_mut() {
                    if *expecting_key {
                        *key = serde_json::from_str(raw).ok();
                        *expecting_key = false;
                        if current(&stack) == path {
                            return Some((token_line, token_col));
                        }
                        continue;
                    }
                }
                if current(&stack) == path {
                    return Some((token_line, token_col));
                }
            }
            _ => {}
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_nested_strings() {
        let text = "{\n  \"matrix\": [[\"1\", \"2\"],\n             [\"x\", \"4\"]],\n  \"diagonal\": [\"1\"]\n}";
        let path = [key("matrix"), Seg::Index(1), Seg::Index(0)];
        assert_eq!(position(text, &path), Some((3, 15)));
        assert_eq!(position(text, &[key("diagonal"), Seg::Index(0)]), Some((4, 16)));
        assert_eq!(position(text, &[key("diagonal")]), Some((4, 3)));
    }

    #[test]
    fn escapes_do_not_confuse_the_scan() {
        let text = r#"{"a\"b": "q\"", "c": ["z"]}"#;
        assert_eq!(position(text, &[key("c"), Seg::Index(0)]), Some((1, 23)));
    }
}
