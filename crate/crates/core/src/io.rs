//! Code files: one word per line, `#` starts a comment.

use std::path::Path;

use crate::codes::CodeSet;
use crate::error::{Error, Result};
use crate::words::Word;

pub fn parse_code_text(text: &str) -> Result<Vec<Word>> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("");
        for tok in line.split([',', ' ', '\t']).filter(|t| !t.is_empty()) {
            out.push(Word::parse(tok)?);
        }
    }
    Ok(out)
}

pub fn read_code_file(path: &Path) -> Result<CodeSet> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    CodeSet::new(parse_code_text(&text)?)
}

pub fn read_word_file(path: &Path) -> Result<Vec<Word>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_code_text(&text)
}

pub fn format_code(x: &CodeSet) -> String {
    x.iter().map(|w| format!("{w}\n")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_separators() {
        let words = parse_code_text("# code\naa\nab, ba # tail\n\n bb\n").unwrap();
        assert_eq!(words.len(), 4);
        let x = CodeSet::new(words).unwrap();
        assert_eq!(parse_code_text(&format_code(&x)).unwrap().len(), 4);
        assert!(parse_code_text("aB").is_err());
    }
}
