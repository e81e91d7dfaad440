use std::collections::BTreeMap;

use num_traits::One;

use crate::cdf::{classify_stream, eval, Classification};
use crate::{DigitStream, DigitVector, Error, Rational, Result};

/// Where a [`CdfOracle`] gets its answers.
#[derive(Debug, Clone)]
pub enum OracleMode {
    /// Simulates `F_B` for a hidden vector.
    HiddenVector(DigitVector),
    /// Answers only the stored points.
    SampleTable(BTreeMap<Rational, Rational>),
}

/// One answered (or refused) query, in the order asked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QueryRecord {
    Point {
        x: Rational,
        value: Rational,
    },
    Stream {
        base: u32,
        label: String,
        verdict: Classification,
    },
}

/// Counts and logs every sample taken from an unknown CDF.
///
/// Reconstruction procedures only see this interface, so the query counter is
/// the sample complexity. Queries go through `&mut self`, which serializes
/// them.
#[derive(Debug, Clone)]
pub struct CdfOracle {
    mode: OracleMode,
    queries: usize,
    log: Vec<QueryRecord>,
}

impl CdfOracle {
    pub fn new(mode: OracleMode) -> Self {
        CdfOracle {
            mode,
            queries: 0,
            log: Vec::new(),
        }
    }

    pub fn hidden(v: DigitVector) -> Self {
        Self::new(OracleMode::HiddenVector(v))
    }

    pub fn table(samples: impl IntoIterator<Item = (Rational, Rational)>) -> Self {
        Self::new(OracleMode::SampleTable(samples.into_iter().collect()))
    }

    pub fn mode(&self) -> &OracleMode {
        &self.mode
    }

    /// Number of queries made so far, including refused ones.
    pub fn queries(&self) -> usize {
        self.queries
    }

    pub fn log(&self) -> &[QueryRecord] {
        &self.log
    }

    /// `F(x)`.
    pub fn query(&mut self, x: &Rational) -> Result<Rational> {
        self.queries += 1;
        let value = match &self.mode {
            OracleMode::HiddenVector(v) => eval(v, x),
            OracleMode::SampleTable(table) => table
                .get(x)
                .cloned()
                .ok_or_else(|| Error::MissingSample(format!("no sample stored at x = {x}")))?,
        };
        self.log.push(QueryRecord::Point {
            x: x.clone(),
            value: value.clone(),
        });
        Ok(value)
    }

    /// `F_{B̌}(x) = 1 - F(1 - x)`, costing one query.
    pub fn query_reversed(&mut self, x: &Rational) -> Result<Rational> {
        let one = Rational::one();
        Ok(&one - self.query(&(&one - x))?)
    }

    /// Classifies `F` at an irrational stand-in; a sample table cannot answer.
    pub fn query_stream(
        &mut self,
        x: &mut DigitStream,
        label: &str,
        depth: usize,
    ) -> Result<Classification> {
        self.queries += 1;
        let verdict = match &self.mode {
            OracleMode::HiddenVector(v) => classify_stream(v, x, depth)?,
            OracleMode::SampleTable(_) => {
                return Err(Error::MissingSample(format!(
                    "a sample table cannot classify stream {label}"
                )))
            }
        };
        self.log.push(QueryRecord::Stream {
            base: x.base(),
            label: label.to_string(),
            verdict: verdict.clone(),
        });
        Ok(verdict)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::rat;

    #[test]
    fn hidden_vector_answers_and_counts() {
        let mut o = CdfOracle::hidden("3:101".parse().unwrap());
        assert_eq!(o.query(&rat(1, 4)).unwrap(), rat(1, 3));
        assert_eq!(o.query_reversed(&rat(1, 4)).unwrap(), rat(1, 3));
        assert_eq!(o.queries(), 2);
        assert_eq!(
            o.log()[1],
            QueryRecord::Point {
                x: rat(3, 4),
                value: rat(2, 3)
            }
        );
    }

    #[test]
    fn table_refuses_unknown_points_but_counts_them() {
        let mut o = CdfOracle::table([(rat(1, 3), rat(1, 2))]);
        assert_eq!(o.query(&rat(2, 6)).unwrap(), rat(1, 2));
        assert!(matches!(o.query(&rat(1, 2)), Err(Error::MissingSample(_))));
        let mut s = DigitStream::seeded(3, &[0, 2], 1).unwrap();
        assert!(o.query_stream(&mut s, "probe", 8).is_err());
        assert_eq!(o.queries(), 3);
        assert_eq!(o.log().len(), 1);
    }
}
