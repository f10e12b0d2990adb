//! Results table serialization. The column set is the harness's public
//! contract; downstream tooling parses it by name.

use crate::{BenchRow, HarnessError};

pub const CSV_HEADER: &str =
    "instance,n,m,solver,sampler,k,chi,nodes_explored,shots,wall_s,terminated_by,seed";

/// Renders header plus rows. Wall time keeps six decimals so identical runs
/// produce identical bytes.
pub fn render_csv(rows: &[BenchRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{:.6},{},{}\n",
            r.instance,
            r.n,
            r.m,
            r.solver,
            r.sampler,
            r.k,
            r.chi,
            r.nodes_explored,
            r.shots,
            r.wall_s,
            r.terminated_by,
            r.seed
        ));
    }
    out
}

pub fn parse_csv(text: &str) -> Result<Vec<BenchRow>, HarnessError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == CSV_HEADER => {}
        Some((_, header)) => {
            return Err(HarnessError::BadCsv {
                line: 1,
                msg: format!("unexpected header {header:?}"),
            })
        }
        None => return Err(HarnessError::BadCsv { line: 1, msg: "empty file".to_string() }),
    }
    let mut rows = Vec::new();
    for (i, line) in lines {
        if line.is_empty() {
            continue;
        }
        let lineno = i + 1;
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 12 {
            return Err(HarnessError::BadCsv {
                line: lineno,
                msg: format!("expected 12 fields, got {}", fields.len()),
            });
        }
        let bad = |what: &str| HarnessError::BadCsv {
            line: lineno,
            msg: format!("unparseable {what}"),
        };
        rows.push(BenchRow {
            instance: fields[0].to_string(),
            n: fields[1].parse().map_err(|_| bad("n"))?,
            m: fields[2].parse().map_err(|_| bad("m"))?,
            solver: fields[3].to_string(),
            sampler: fields[4].to_string(),
            k: fields[5].parse().map_err(|_| bad("k"))?,
            chi: fields[6].parse().map_err(|_| bad("chi"))?,
            nodes_explored: fields[7].parse().map_err(|_| bad("nodes_explored"))?,
            shots: fields[8].parse().map_err(|_| bad("shots"))?,
            wall_s: fields[9].parse().map_err(|_| bad("wall_s"))?,
            terminated_by: fields[10].to_string(),
            seed: fields[11].parse().map_err(|_| bad("seed"))?,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row() -> BenchRow {
        BenchRow {
            instance: "udg_n10_s00".to_string(),
            n: 10,
            m: 17,
            solver: "bbq".to_string(),
            sampler: "exact".to_string(),
            k: 4,
            chi: 4,
            nodes_explored: 6,
            shots: 122880,
            wall_s: 0.012345,
            terminated_by: "optimality".to_string(),
            seed: 42,
        }
    }

    #[test]
    fn rows_roundtrip_through_text() {
        let rows = vec![row()];
        let text = render_csv(&rows);
        assert!(text.starts_with(CSV_HEADER));
        assert_eq!(
            text.lines().nth(1).unwrap(),
            "udg_n10_s00,10,17,bbq,exact,4,4,6,122880,0.012345,optimality,42"
        );
        assert_eq!(parse_csv(&text).unwrap(), rows);
    }

    #[test]
    fn malformed_tables_are_rejected_with_line_numbers() {
        assert!(matches!(
            parse_csv("wrong,header\n"),
            Err(HarnessError::BadCsv { line: 1, .. })
        ));
        let mut text = render_csv(&[row()]);
        text.push_str("short,line\n");
        assert!(matches!(parse_csv(&text), Err(HarnessError::BadCsv { line: 3, .. })));
    }
}
