//! Line-based automaton text format.
//!
//! ```text
//! alphabet a abar b bbar
//! complement a abar
//! complement b bbar
//! states q0 q1
//! initial q0
//! final q1
//! arc q0 a q1
//! ```
//!
//! `#` starts a comment, blank lines are ignored and tokens are separated by
//! whitespace. Directives may appear in any order.

use std::fmt::Write as _;

use crate::alphabet::{Alphabet, Letter};
use crate::dfa::{Dfa, PartialDfa};
use crate::error::{Error, Result};

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses an automaton that may lack some transitions.
pub fn parse_automaton(text: &str) -> Result<PartialDfa> {
    let mut alphabet: Option<(usize, Vec<&str>)> = None;
    let mut pairs: Vec<(usize, &str, &str)> = Vec::new();
    let mut states: Option<(usize, Vec<&str>)> = None;
    let mut initial: Option<(usize, &str)> = None;
    let mut finals: Option<(usize, Vec<&str>)> = None;
    let mut arcs: Vec<(usize, &str, &str, &str)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("");
        let mut tokens = line.split_whitespace();
        let Some(keyword) = tokens.next() else {
            continue;
        };
        let args: Vec<&str> = tokens.collect();
        match keyword {
            "alphabet" => {
                if alphabet.is_some() {
                    return Err(parse_error(lineno, "second alphabet line"));
                }
                alphabet = Some((lineno, args));
            }
            "complement" => match args[..] {
                [x, y] => pairs.push((lineno, x, y)),
                _ => return Err(parse_error(lineno, "complement expects two letters")),
            },
            "states" => {
                if states.is_some() {
                    return Err(parse_error(lineno, "second states line"));
                }
                states = Some((lineno, args));
            }
            "initial" => {
                if initial.is_some() {
                    return Err(parse_error(lineno, "second initial line"));
                }
                match args[..] {
                    [s] => initial = Some((lineno, s)),
                    _ => return Err(parse_error(lineno, "initial expects exactly one state")),
                }
            }
            "final" => {
                if finals.is_some() {
                    return Err(parse_error(lineno, "second final line"));
                }
                finals = Some((lineno, args));
            }
            "arc" => match args[..] {
                [s, a, d] => arcs.push((lineno, s, a, d)),
                _ => return Err(parse_error(lineno, "arc expects <src> <letter> <dst>")),
            },
            other => return Err(parse_error(lineno, format!("unknown directive `{other}`"))),
        }
    }

    let (alpha_line, letters) = alphabet.ok_or_else(|| parse_error(0, "missing alphabet line"))?;
    if letters.len() < 2 {
        return Err(parse_error(alpha_line, "an alphabet needs at least 2 letters"));
    }
    for (j, l) in letters.iter().enumerate() {
        if letters[..j].contains(l) {
            return Err(parse_error(alpha_line, format!("letter {l} listed twice")));
        }
    }
    let mut seen: Vec<bool> = vec![false; letters.len()];
    for &(lineno, x, y) in &pairs {
        for l in [x, y] {
            let Some(pos) = letters.iter().position(|t| *t == l) else {
                return Err(parse_error(lineno, format!("unknown letter {l}")));
            };
            if seen[pos] && !(x == y && l == y) {
                return Err(parse_error(lineno, format!("letter {l} complemented twice")));
            }
            seen[pos] = true;
        }
    }
    if let Some(pos) = seen.iter().position(|s| !s) {
        return Err(parse_error(
            alpha_line,
            format!("missing complement line for letter {}", letters[pos]),
        ));
    }
    let pair_list: Vec<(&str, &str)> = pairs.iter().map(|&(_, x, y)| (x, y)).collect();
    let sigma = Alphabet::new(&letters, &pair_list).map_err(|e| parse_error(alpha_line, e.to_string()))?;

    let (states_line, names) = states.ok_or_else(|| parse_error(0, "missing states line"))?;
    for (j, s) in names.iter().enumerate() {
        if names[..j].contains(s) {
            return Err(parse_error(states_line, format!("state {s} declared twice")));
        }
    }
    let (init_line, init) = initial.ok_or_else(|| parse_error(0, "missing initial line"))?;
    if !names.contains(&init) {
        return Err(parse_error(init_line, format!("unknown state {init}")));
    }
    let mut dfa = PartialDfa::new(sigma, &names, init).map_err(|e| parse_error(states_line, e.to_string()))?;
    if let Some((lineno, fs)) = finals {
        for f in fs {
            dfa.set_final(f)
                .map_err(|_| parse_error(lineno, format!("unknown state {f}")))?;
        }
    }
    for (lineno, s, a, d) in arcs {
        for st in [s, d] {
            if !names.contains(&st) {
                return Err(parse_error(lineno, format!("unknown state {st}")));
            }
        }
        if dfa.alphabet().letter(a).is_err() {
            return Err(parse_error(lineno, format!("unknown letter {a}")));
        }
        dfa.add_arc(s, a, d).map_err(|e| parse_error(lineno, e.to_string()))?;
    }
    Ok(dfa)
}

/// Parses an automaton and requires its transition map to be total.
pub fn parse_dfa(text: &str) -> Result<Dfa> {
    parse_automaton(text)?.into_total()
}

/// Prints an automaton in the text format; arcs are listed per state in
/// canonical letter order.
pub fn print_automaton(dfa: &PartialDfa) -> String {
    let sigma = dfa.alphabet();
    let (names, arcs, initial, finals) = dfa.parts();
    let mut out = String::new();
    let tokens: Vec<&str> = sigma.letters().map(|a| sigma.token(a)).collect();
    writeln!(out, "alphabet {}", tokens.join(" ")).unwrap();
    for (x, y) in sigma.complement_pairs() {
        writeln!(out, "complement {} {}", sigma.token(x), sigma.token(y)).unwrap();
    }
    writeln!(out, "states {}", names.join(" ")).unwrap();
    writeln!(out, "initial {}", names[initial]).unwrap();
    let fs: Vec<&str> = names
        .iter()
        .zip(finals)
        .filter(|(_, &f)| f)
        .map(|(n, _)| n.as_str())
        .collect();
    if fs.is_empty() {
        out.push_str("final\n");
    } else {
        writeln!(out, "final {}", fs.join(" ")).unwrap();
    }
    let m = sigma.len();
    for (i, t) in arcs.iter().enumerate() {
        if let Some(d) = t {
            writeln!(
                out,
                "arc {} {} {}",
                names[i / m],
                sigma.token(Letter(i % m)),
                names[*d]
            )
            .unwrap();
        }
    }
    out
}

pub fn print_dfa(dfa: &Dfa) -> String {
    print_automaton(&dfa.to_partial())
}
