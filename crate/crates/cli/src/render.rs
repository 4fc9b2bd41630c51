//! Plain-text tables and number formatting.

use evidence::Rational;

/// How rationals are printed: exact `p/q`, or a fixed number of decimal
/// digits rounded half-to-even.
#[derive(Clone, Copy, Debug, Default)]
pub struct NumberFormat {
    pub decimal: Option<usize>,
}

impl NumberFormat {
    pub fn show(&self, x: &Rational) -> String {
        match self.decimal {
            Some(digits) => x.to_decimal(digits),
            None => x.to_string(),
        }
    }
}

/// Left-aligned columns separated by ` | `, header underlined with dashes.
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<I, S>(header: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Table {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row<I, S>(&mut self, cells: I)
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let row: Vec<String> = cells.into_iter().map(Into::into).collect();
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let widths: Vec<usize> = (0..self.header.len())
            .map(|c| {
                std::iter::once(&self.header)
                    .chain(&self.rows)
                    .map(|r| r[c].chars().count())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(cell, &w)| format!("{cell:<w$}"))
                .collect();
            padded.join(" | ").trim_end().to_string()
        };
        let mut out = line(&self.header);
        out.push('\n');
        let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
        out.push_str(&rule.join("-+-"));
        out.push('\n');
        for r in &self.rows {
            out.push_str(&line(r));
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn columns_align_and_trailing_space_is_trimmed() {
        let mut t = Table::new(["observation", "A", "B"]);
        t.row(["heads", "2/3", "1/3"]);
        t.row(["tails", "0", "1"]);
        assert_eq!(
            t.render(),
            "observation | A   | B\n\
             ------------+-----+----\n\
             heads       | 2/3 | 1/3\n\
             tails       | 0   | 1\n"
        );
    }

    #[test]
    fn decimal_rendering() {
        let f = NumberFormat { decimal: Some(3) };
        assert_eq!(f.show(&Rational::new(2, 3)), "0.667");
        assert_eq!(NumberFormat::default().show(&Rational::new(2, 3)), "2/3");
    }
}
