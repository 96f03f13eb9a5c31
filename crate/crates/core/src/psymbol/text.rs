//! The one-line input format and the aligned tableau rendering.

use super::{BranchMap, BranchPoint, Column, Exponent, PSymbol};
use crate::error::{Error, Result};

fn split_variable<'a>(s: &'a str, default: &'a str) -> (&'a str, &'a str) {
    match s.rsplit_once(';') {
        Some((body, var)) if !var.trim().is_empty() => (body, var.trim()),
        Some((body, _)) => (body, default),
        None => (s, default),
    }
}

pub(super) fn parse_symbol(s: &str) -> Result<PSymbol> {
    let (body, variable) = split_variable(s, "z");
    let mut columns = Vec::new();
    for part in body.split('|').map(str::trim).filter(|p| !p.is_empty()) {
        let (point, exps) = part
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("column {part:?} lacks 'point:'")))?;
        let exponents = exps
            .split(',')
            .map(|e| e.trim().parse::<Exponent>())
            .collect::<Result<Vec<_>>>()?;
        columns.push(Column {
            point: point.parse()?,
            exponents,
        });
    }
    let order = columns
        .first()
        .map(|c| c.exponents.len())
        .ok_or_else(|| Error::Parse("a tableau needs at least one column".into()))?;
    PSymbol::new(order, variable, columns)
}

fn parse_multiplicity(token: &str) -> Option<u32> {
    token
        .strip_prefix('x')
        .or_else(|| token.strip_prefix('×'))
        .and_then(|n| n.parse().ok())
}

pub(super) fn parse_map(s: &str) -> Result<BranchMap> {
    let (body, variable) = split_variable(s, "w");
    let mut bps = Vec::new();
    for entry in body.split(',').map(str::trim).filter(|e| !e.is_empty()) {
        let (pre, rest) = entry
            .split_once("->")
            .ok_or_else(|| Error::Parse(format!("branch point {entry:?} lacks '->'")))?;
        let mut tokens: Vec<&str> = rest.split_whitespace().collect();
        let multiplicity = match tokens.last().and_then(|t| parse_multiplicity(t)) {
            Some(m) if tokens.len() > 1 => {
                tokens.pop();
                m
            }
            _ => 1,
        };
        if tokens.len() != 1 {
            return Err(Error::Parse(format!("cannot read image in {entry:?}")));
        }
        bps.push(BranchPoint {
            preimage: pre.parse()?,
            image: tokens[0].parse()?,
            multiplicity,
        });
    }
    if bps.is_empty() {
        return Err(Error::Parse("a map needs at least one branch point".into()));
    }
    BranchMap::new(variable, bps)
}

pub(super) fn to_line(p: &PSymbol) -> String {
    let cols: Vec<String> = p
        .columns
        .iter()
        .map(|c| {
            let exps: Vec<String> = c.exponents.iter().map(Exponent::to_string).collect();
            format!("{}: {}", c.point, exps.join(", "))
        })
        .collect();
    format!("{}; {}", cols.join(" | "), p.variable)
}

pub(super) fn render(p: &PSymbol) -> String {
    if p.columns.is_empty() {
        return format!("(no singular points, order {}) | {}\n", p.order, p.variable);
    }
    let cells: Vec<Vec<String>> = p
        .columns
        .iter()
        .map(|c| {
            std::iter::once(c.point.to_string())
                .chain(c.exponents.iter().map(Exponent::to_string))
                .collect()
        })
        .collect();
    let widths: Vec<usize> = cells
        .iter()
        .map(|col| col.iter().map(|s| s.chars().count()).max().unwrap_or(1))
        .collect();
    let mut out = String::new();
    for row in 0..=p.order {
        let line: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(col, &w)| format!("{:<w$}", col[row]))
            .collect();
        out.push_str(&line.join("  "));
        out.push_str(" |");
        if row == 0 {
            out.push(' ');
            out.push_str(&p.variable);
        }
        out.push('\n');
        if row == 0 {
            let total: usize = widths.iter().sum::<usize>() + 2 * (widths.len() - 1);
            out.push_str(&"-".repeat(total + 1));
            out.push_str("+\n");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psymbol::Point;

    #[test]
    fn renders_aligned_table() {
        let p: PSymbol = "0: 0, 1/3 | 1: 0, 1/3 | inf: 0, 1/3".parse().unwrap();
        let shown = p.render();
        let lines: Vec<&str> = shown.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], "0    1    inf | z");
        assert_eq!(lines[3], "1/3  1/3  1/3 |");
        assert!(PSymbol::empty(2, "w").render().contains("no singular points"));
    }

    #[test]
    fn line_format_round_trips() {
        for s in [
            "0: 0, 1/3 | 1: 0, 1/3 | inf: 0, 1/3; z",
            "[A]: 0, 1, 0 | [B]: 0, 1, 3; w",
            "0: 0, b-a, c-a | 1: a, a+1, 2a-2b-2c+2 | inf: 0, b-a, c-a; w",
        ] {
            let p: PSymbol = s.parse().unwrap();
            assert_eq!(p.to_line(), s);
        }
    }

    #[test]
    fn parses_maps() {
        let m: BranchMap = "[A] -> inf x3, [B] -> 0 ×3, -i -> 1".parse().unwrap();
        assert_eq!(m.variable(), "w");
        let bps = m.branch_points();
        assert_eq!(bps[0].image, Point::Infinity);
        assert_eq!(bps[1].multiplicity, 3);
        assert_eq!(bps[2].preimage, Point::named("-i"));
        assert_eq!(bps[2].multiplicity, 1);
        assert!("0 => 1".parse::<BranchMap>().is_err());
        assert!("0 -> 1 2".parse::<BranchMap>().is_err());
        assert!("".parse::<BranchMap>().is_err());
    }

    #[test]
    fn rejects_malformed_symbols() {
        assert!("".parse::<PSymbol>().is_err());
        assert!("0 0, 1".parse::<PSymbol>().is_err());
        assert!("0: 0, x".parse::<PSymbol>().is_err());
    }
}
