//! Locale-independent number and CSV formatting.

/// Formats with 12 significant digits: fixed notation while the decimal
/// exponent is in [-4, 12), scientific outside, trailing zeros trimmed.
/// Matches C's `%.12g` so tables diff cleanly against other tooling.
pub fn fmt_g(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".to_string()
        } else if x > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        };
    }
    // {:.11e} rounds to 12 significant digits, so the exponent it prints
    // is the post-rounding one %g keys off.
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponential format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..12).contains(&exp) {
        let precision = (11 - exp).max(0) as usize;
        trim_fraction(format!("{x:.precision$}"))
    } else {
        format!("{}e{exp}", trim_fraction(mantissa.to_string()))
    }
}

fn trim_fraction(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// A CSV table with a fixed header. Values never need quoting here
/// (numbers and fixed labels only), so rows are plain comma joins.
pub struct Table {
    header: &'static [&'static str],
    rows: Vec<Vec<String>>,
}

impl Table {
    /// Starts an empty table under the given header.
    pub fn new(header: &'static [&'static str]) -> Self {
        Table { header, rows: Vec::new() }
    }

    /// Appends one row; must match the header width.
    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        debug_assert!(row.iter().all(|v| !v.contains(',') && !v.contains('"')));
        self.rows.push(row);
    }

    /// Number of data rows so far.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    /// Whether any data rows were pushed.
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Renders header plus rows, one line each, '\n' terminated.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}
