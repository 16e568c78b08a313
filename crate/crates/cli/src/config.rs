//! Plain-text key=value run configuration, merged under explicit flags.
//!
//! Keys are long option names; global options apply before the subcommand,
//! anything else is handed to the chosen subcommand. Explicit command-line
//! flags win because config-derived flags are injected first and the parser
//! lets later occurrences override earlier ones.

use std::path::Path;

/// (key, value) pairs in file order.
pub fn parse_file(path: &Path) -> Result<Vec<(String, String)>, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("config {}: {e}", path.display()))?;
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(format!(
                "config {} line {}: expected key = value, got {raw:?}",
                path.display(),
                lineno + 1
            ));
        };
        out.push((key.trim().to_string(), value.trim().to_string()));
    }
    Ok(out)
}

pub const GLOBAL_KEYS: &[&str] = &["cache-dir", "threads", "seed", "output", "format"];

/// Split raw user args into (globals, subcommand-and-rest). Every global
/// option takes a value, so the first token not consumed by one is the
/// subcommand.
pub fn split_at_subcommand(args: &[String]) -> (Vec<String>, Vec<String>) {
    let mut globals = Vec::new();
    let mut i = 0;
    while i < args.len() {
        let a = &args[i];
        if a.starts_with("--") {
            globals.push(a.clone());
            if !a.contains('=') && i + 1 < args.len() {
                globals.push(args[i + 1].clone());
                i += 1;
            }
            i += 1;
        } else {
            break;
        }
    }
    (globals, args[i..].to_vec())
}

/// Merged argv: config-derived flags first (so explicit flags override),
/// validated against the known key sets.
pub fn merged_argv(
    bin: String,
    user_args: Vec<String>,
    entries: &[(String, String)],
    subcommand_keys: &[(&str, &[&str])],
) -> Result<Vec<String>, String> {
    let (user_globals, rest) = split_at_subcommand(&user_args);
    let subcommand = rest.first().cloned();
    let allowed_sub: &[&str] = match &subcommand {
        Some(name) => subcommand_keys
            .iter()
            .find(|(cmd, _)| cmd == name)
            .map(|(_, keys)| *keys)
            .unwrap_or(&[]),
        None => &[],
    };

    let mut cfg_globals = Vec::new();
    let mut cfg_sub = Vec::new();
    for (key, value) in entries {
        if key == "config" {
            return Err("config files cannot nest via the config key".to_string());
        }
        if GLOBAL_KEYS.contains(&key.as_str()) {
            cfg_globals.push(format!("--{key}"));
            cfg_globals.push(value.clone());
        } else if allowed_sub.contains(&key.as_str()) {
            cfg_sub.push(format!("--{key}"));
            cfg_sub.push(value.clone());
        } else {
            return Err(format!("config: unknown key {key:?} for this command"));
        }
    }

    let mut argv = vec![bin];
    argv.extend(cfg_globals);
    argv.extend(user_globals);
    if let Some(sub) = subcommand {
        argv.push(sub);
        argv.extend(cfg_sub);
        argv.extend(rest[1..].iter().cloned());
    }
    Ok(argv)
}
