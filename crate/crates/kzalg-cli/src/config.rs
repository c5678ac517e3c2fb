//! Plain-text configuration: `key = value` lines with the same keys as the flags.
//! Values from the file are inserted right after the subcommand, so flags given on
//! the command line take precedence.

use std::ffi::OsString;
use std::path::Path;

use anyhow::{bail, Context, Result};

const SUBCOMMANDS: [&str; 8] = ["roots", "clans", "spirals", "orbits", "partypes", "klr-check", "hecke-check", "monodromy"];

/// Parses a config file into flag tokens.
pub fn parse_config(text: &str, origin: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = match line.split_once('=') {
            Some((k, v)) => (k.trim(), v.trim()),
            None => match line.split_once(char::is_whitespace) {
                Some((k, v)) => (k.trim(), v.trim()),
                None => (line, "true"),
            },
        };
        let key = key.trim_start_matches("--");
        if key.is_empty() || !key.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_') {
            bail!("{origin}:{}: bad key {key:?}", no + 1);
        }
        if key == "config" {
            bail!("{origin}:{}: nested config files are not supported", no + 1);
        }
        let flag = format!("--{}", key.replace('_', "-"));
        match value {
            "true" => out.push(flag),
            "false" => {}
            v => {
                out.push(flag);
                out.push(v.trim_matches('"').to_string());
            }
        }
    }
    Ok(out)
}

fn config_path(argv: &[OsString]) -> Result<Option<OsString>> {
    let mut it = argv.iter().skip(1);
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            return Ok(Some(it.next().cloned().context("--config needs a path")?));
        }
        if let Some(p) = s.strip_prefix("--config=") {
            return Ok(Some(OsString::from(p)));
        }
    }
    Ok(None)
}

/// Splices the tokens of the `--config` file, if any, after the subcommand name.
pub fn expand_args(argv: Vec<OsString>) -> Result<Vec<OsString>> {
    let Some(path) = config_path(&argv)? else { return Ok(argv) };
    let text = std::fs::read_to_string(Path::new(&path)).with_context(|| format!("reading config {}", path.to_string_lossy()))?;
    let tokens = parse_config(&text, &path.to_string_lossy())?;
    let at = argv
        .iter()
        .position(|a| SUBCOMMANDS.contains(&a.to_string_lossy().as_ref()))
        .context("the config file needs a subcommand on the command line")?;
    let mut out = argv[..=at].to_vec();
    out.extend(tokens.into_iter().map(OsString::from));
    out.extend_from_slice(&argv[at + 1..]);
    Ok(out)
}
