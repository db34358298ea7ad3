use monotone_core::analysis::{figure_scan, FigureFamily, FigureRow};

use super::Outcome;
use crate::error::Result;
use crate::numfmt::sig9;

pub const HEADER: [&str; 7] = [
    "param1",
    "param2",
    "e2_norm",
    "e_min",
    "e_min_reinforced",
    "tangle",
    "partial_negativity",
];

/// CSV rendering of figure rows; an absent `param2` is an empty field.
pub fn figure_csv(rows: &[FigureRow]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(HEADER).expect("in-memory write");
    for r in rows {
        w.write_record([
            sig9(r.param1),
            r.param2.map(sig9).unwrap_or_default(),
            sig9(r.e2_norm),
            sig9(r.e_min),
            sig9(r.e_min_reinforced),
            sig9(r.tangle),
            sig9(r.partial_negativity),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

pub fn run(fig: u8, resolution: usize) -> Result<Outcome> {
    let family = match fig {
        1 => FigureFamily::Fig1 { resolution },
        _ => FigureFamily::Fig2 { resolution },
    };
    Ok(Outcome::report(figure_csv(&figure_scan(family)?)))
}
