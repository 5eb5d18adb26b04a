//! Long-format plot data: one `(series, x, y)` row per point.

#[derive(Clone, Debug, PartialEq)]
pub struct PlotRow {
    pub series: String,
    pub x: f64,
    pub y: f64,
}

impl PlotRow {
    pub fn new(series: impl Into<String>, x: f64, y: f64) -> Self {
        Self { series: series.into(), x, y }
    }
}

pub fn plot_csv(rows: &[PlotRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["series", "x", "y"]).expect("writing to memory");
    for r in rows {
        w.write_record([r.series.clone(), r.x.to_string(), r.y.to_string()]).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("csv output is UTF-8")
}
