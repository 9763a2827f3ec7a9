use super::{directive, lines, parse_err, Cursor};
use crate::engine::{Trace, TraceStep};
use crate::error::Result;

/// Parses `@trace SYSTEM`, `@start [..]` and one `step ID @ POS` per line.
///
/// Rule ids and symbols are not checked here; replay does that against the
/// system.
pub fn parse_trace(text: &str) -> Result<Trace> {
    let mut name: Option<String> = None;
    let mut start = None;
    let mut steps = Vec::new();
    let mut last_line = 0;
    for (line, l) in lines(text) {
        last_line = line;
        if let Some(rest) = l.strip_prefix("step").filter(|r| r.starts_with(char::is_whitespace)) {
            let mut c = Cursor::new(line, rest);
            let rule = c.word()?.to_string();
            if !c.keyword("@") {
                return Err(parse_err(line, "expected 'step ID @ POS'"));
            }
            let pos = c.word()?;
            let position = pos
                .parse::<usize>()
                .map_err(|_| parse_err(line, format!("invalid position {pos}")))?;
            if !c.is_empty() {
                return Err(parse_err(line, "unexpected text after the position"));
            }
            steps.push(TraceStep::new(rule, position));
            continue;
        }
        let (d, rest) = directive(line, l)?;
        match d {
            "trace" if name.is_none() && !rest.is_empty() && !rest.contains(char::is_whitespace) => {
                name = Some(rest.to_string());
            }
            "trace" => return Err(parse_err(line, "expected a single @trace NAME line")),
            "start" if start.is_none() => {
                let mut c = Cursor::new(line, rest);
                start = Some(c.string()?);
                if !c.is_empty() {
                    return Err(parse_err(line, "unexpected text after the start form"));
                }
            }
            "start" => return Err(parse_err(line, "second @start line")),
            other => return Err(parse_err(line, format!("unknown directive @{other}"))),
        }
    }
    let end = last_line.max(1);
    Ok(Trace {
        system_name: name.ok_or_else(|| parse_err(end, "missing @trace line"))?,
        start: start.ok_or_else(|| parse_err(end, "missing @start line"))?,
        steps,
    })
}

pub fn render_trace(t: &Trace) -> String {
    let mut out = format!("@trace {}\n@start {}\n", t.system_name, t.start);
    for s in &t.steps {
        out.push_str(&format!("step {} @ {}\n", s.rule, s.position));
    }
    out
}
