use clap::ValueEnum;
use num_bigint::BigInt;
use serde_json::{json, Value};

use super::format::{big_json, pretty, rat_string};
use super::{CliError, Outcome, OutputFormat, RunConfig};
use crate::asmcount::{
    asm_total, brute_refined, gen_poly_a, gen_poly_b, gen_poly_h, ht_total, refined_asm_table,
    refined_ht_table, RefinedTable, SymmetryClass, DEFAULT_ASM_CAP,
};
use crate::exactnum::RationalPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    #[value(name = "A")]
    A,
    #[value(name = "A_refined")]
    ARefined,
    #[value(name = "H")]
    H,
    #[value(name = "H_refined")]
    HRefined,
    #[value(name = "genpoly")]
    GenPoly,
}

const MAX_RANGE: usize = 200;

/// `4`, `1..5` or `1..=5`, both ends inclusive.
pub(crate) fn parse_range(s: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Usage(format!("invalid order range '{s}'"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let v = num(s)?;
            (v, v)
        }
    };
    if lo == 0 || lo > hi {
        return Err(bad());
    }
    if hi - lo >= MAX_RANGE {
        return Err(CliError::Usage(format!("range '{s}' spans more than {MAX_RANGE} orders")));
    }
    Ok((lo..=hi).collect())
}

fn even_orders(s: &str) -> Result<Vec<usize>, CliError> {
    let all = parse_range(s)?;
    if all.len() == 1 && all[0] % 2 == 1 {
        return Err(crate::error::Error::OddOrderForHalfTurn(all[0]).into());
    }
    Ok(all.into_iter().filter(|o| o % 2 == 0).collect())
}

struct Totals {
    class: SymmetryClass,
    rows: Vec<(usize, BigInt)>,
}

fn render_totals(t: &Totals, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => pretty(&Value::Array(
            t.rows
                .iter()
                .map(|(o, total)| json!({"order": o, "class": t.class.name(), "total": big_json(total)}))
                .collect(),
        )),
        OutputFormat::Csv => {
            let mut s = String::from("order,class,total\n");
            for (o, total) in &t.rows {
                s += &format!("{o},{},{total}\n", t.class.name());
            }
            s
        }
        OutputFormat::Text => t.rows.iter().map(|(o, total)| format!("{o}\t{total}\n")).collect(),
    }
}

fn render_refined(tables: &[RefinedTable], format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => pretty(&Value::Array(
            tables
                .iter()
                .map(|t| {
                    json!({
                        "order": t.order(),
                        "class": t.class().name(),
                        "counts": t.counts().iter().map(big_json).collect::<Vec<_>>(),
                        "total": big_json(&t.total()),
                    })
                })
                .collect(),
        )),
        OutputFormat::Csv => {
            let mut s = String::from("order,class,r,count\n");
            for t in tables {
                for (r, c) in t.counts().iter().enumerate() {
                    s += &format!("{},{},{},{c}\n", t.order(), t.class().name(), r + 1);
                }
            }
            s
        }
        OutputFormat::Text => tables
            .iter()
            .map(|t| {
                let counts: Vec<String> = t.counts().iter().map(|c| c.to_string()).collect();
                format!("{}\t{}\ttotal {}\n", t.order(), counts.join(" "), t.total())
            })
            .collect(),
    }
}

/// Closed-form table, cross-checked by enumeration when the order is within
/// the brute-force cap.
fn refined_table(order: usize, class: SymmetryClass, cfg: &RunConfig) -> Result<RefinedTable, CliError> {
    let closed = match class {
        SymmetryClass::Plain => refined_asm_table(order)?,
        // the closed form starts at order four; order two is enumerated
        SymmetryClass::HalfTurn if order == 2 => return Ok(brute_refined(2, class, 2)?),
        SymmetryClass::HalfTurn => refined_ht_table(order / 2)?,
    };
    let cap = cfg.brute_cap.min(match class {
        SymmetryClass::Plain => DEFAULT_ASM_CAP,
        SymmetryClass::HalfTurn => super::MAX_BRUTE_CAP,
    });
    if order <= cap {
        let brute = brute_refined(order, class, cap)?;
        if brute != closed {
            return Err(CliError::Failed(format!(
                "order {order}: enumeration {:?} disagrees with closed form {:?}",
                brute.counts(),
                closed.counts()
            )));
        }
    }
    Ok(closed)
}

fn render_polys(letter: &str, polys: &[(usize, RationalPoly)], format: OutputFormat) -> Result<String, CliError> {
    Ok(match format {
        OutputFormat::Json => pretty(&Value::Array(
            polys
                .iter()
                .map(|(n, p)| {
                    json!({
                        "polynomial": letter,
                        "n": n,
                        "value": p.to_string(),
                        "coefficients": p.coeffs().iter().map(rat_string).collect::<Vec<_>>(),
                    })
                })
                .collect(),
        )),
        OutputFormat::Text => polys.iter().map(|(_, p)| format!("{p}\n")).collect(),
        OutputFormat::Csv => {
            return Err(CliError::Usage("CSV output is only available for count tables".into()))
        }
    })
}

pub(crate) fn cmd_table(kind: TableKind, args: &[String], cfg: &RunConfig) -> Result<Outcome, CliError> {
    let expect_args = if kind == TableKind::GenPoly { 2 } else { 1 };
    if args.len() != expect_args {
        return Err(CliError::Usage(match kind {
            TableKind::GenPoly => "usage: table genpoly <A|H|B> <range>".into(),
            _ => "usage: table <kind> <range>".into(),
        }));
    }
    let range = &args[args.len() - 1];
    let text = match kind {
        TableKind::A => render_totals(
            &Totals {
                class: SymmetryClass::Plain,
                rows: parse_range(range)?
                    .into_iter()
                    .map(|n| Ok((n, asm_total(n)?)))
                    .collect::<Result<_, CliError>>()?,
            },
            cfg.format,
        ),
        TableKind::H => render_totals(
            &Totals {
                class: SymmetryClass::HalfTurn,
                rows: even_orders(range)?
                    .into_iter()
                    .map(|o| Ok((o, ht_total(o)?)))
                    .collect::<Result<_, CliError>>()?,
            },
            cfg.format,
        ),
        TableKind::ARefined => {
            let tables = parse_range(range)?
                .into_iter()
                .map(|n| refined_table(n, SymmetryClass::Plain, cfg))
                .collect::<Result<Vec<_>, _>>()?;
            render_refined(&tables, cfg.format)
        }
        TableKind::HRefined => {
            let tables = even_orders(range)?
                .into_iter()
                .map(|o| refined_table(o, SymmetryClass::HalfTurn, cfg))
                .collect::<Result<Vec<_>, _>>()?;
            render_refined(&tables, cfg.format)
        }
        TableKind::GenPoly => {
            let letter = args[0].to_ascii_uppercase();
            let polys = match letter.as_str() {
                "A" => parse_range(range)?
                    .into_iter()
                    .map(|n| Ok((n, gen_poly_a(n)?)))
                    .collect::<Result<Vec<_>, CliError>>()?,
                "H" => even_orders(range)?
                    .into_iter()
                    .map(|o| Ok((o, gen_poly_h(o / 2)?)))
                    .collect::<Result<Vec<_>, CliError>>()?,
                "B" => parse_range(range)?
                    .into_iter()
                    .map(|n| Ok((n, gen_poly_b(n)?)))
                    .collect::<Result<Vec<_>, CliError>>()?,
                other => return Err(CliError::Usage(format!("unknown polynomial '{other}', expected A, H or B"))),
            };
            render_polys(&letter, &polys, cfg.format)?
        }
    };
    Ok(Outcome { text, passed: true })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("4").unwrap(), vec![4]);
        assert_eq!(parse_range("1..5").unwrap(), vec![1, 2, 3, 4, 5]);
        assert_eq!(parse_range("2..=3").unwrap(), vec![2, 3]);
        assert!(parse_range("0").is_err());
        assert!(parse_range("5..1").is_err());
        assert!(parse_range("x").is_err());
        assert_eq!(even_orders("1..6").unwrap(), vec![2, 4, 6]);
        assert!(even_orders("3").is_err());
    }
}
