use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::MdlError;
use crate::cost::BitCost;

/// Cost of the production tag: a uniform choice among the four productions.
pub const TAG_BITS: u64 = 2;

/// Sign bit of an arithmetic step.
const SIGN_BITS: u64 = 1;

/// Inclusive integer range `[lo, hi]` that literals are drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDomain")]
pub struct Domain {
    lo: i64,
    hi: i64,
}

#[derive(Deserialize)]
struct RawDomain {
    lo: i64,
    hi: i64,
}

impl TryFrom<RawDomain> for Domain {
    type Error = MdlError;

    fn try_from(raw: RawDomain) -> Result<Self, MdlError> {
        Domain::new(raw.lo, raw.hi)
    }
}

impl Domain {
    pub fn new(lo: i64, hi: i64) -> Result<Self, MdlError> {
        if lo > hi {
            return Err(MdlError::InvalidDomain { lo, hi, reason: "lo > hi" });
        }
        if (hi as i128 - lo as i128) >= u64::MAX as i128 {
            return Err(MdlError::InvalidDomain { lo, hi, reason: "width does not fit in 64 bits" });
        }
        Ok(Domain { lo, hi })
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    /// Number of values in the domain.
    pub fn width(&self) -> u64 {
        (self.hi as i128 - self.lo as i128 + 1) as u64
    }

    pub fn contains(&self, v: i64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn check(&self, v: i64) -> Result<(), MdlError> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(MdlError::OutOfDomain { value: v, lo: self.lo, hi: self.hi })
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Literal {
    pub value: i64,
    pub domain: Domain,
}

impl Literal {
    pub fn new(value: i64, domain: Domain) -> Result<Self, MdlError> {
        domain.check(value)?;
        Ok(Literal { value, domain })
    }
}

/// An expression in the description grammar.
///
/// Every well-formed code decodes to exactly one non-empty integer sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Code {
    Literal(Literal),
    ArithSeq { start: Literal, step: i64, length: u64 },
    Repeat { body: Box<Code>, count: u64 },
    Concat { parts: Vec<Code> },
}

impl Code {
    /// Production index, used for tie-breaking (`Literal < ArithSeq < Repeat < Concat`).
    pub fn tag(&self) -> u8 {
        match self {
            Code::Literal(_) => 0,
            Code::ArithSeq { .. } => 1,
            Code::Repeat { .. } => 2,
            Code::Concat { .. } => 3,
        }
    }

    pub fn validate(&self) -> Result<(), MdlError> {
        match self {
            Code::Literal(lit) => lit.domain.check(lit.value).map_err(malformed),
            Code::ArithSeq { start, step, length } => {
                start.domain.check(start.value).map_err(malformed)?;
                if *length == 0 {
                    return Err(MdlError::Malformed("arithmetic sequence of length 0".into()));
                }
                let last = start.value as i128 + *step as i128 * (*length as i128 - 1);
                let d = start.domain;
                if last < d.lo() as i128 || last > d.hi() as i128 {
                    return Err(MdlError::Malformed(format!(
                        "arithmetic sequence leaves its domain {d} (last term {last})"
                    )));
                }
                Ok(())
            }
            Code::Repeat { body, count } => {
                if *count == 0 {
                    return Err(MdlError::Malformed("repeat count of 0".into()));
                }
                body.validate()
            }
            Code::Concat { parts } => {
                if parts.is_empty() {
                    return Err(MdlError::Malformed("concatenation without parts".into()));
                }
                parts.iter().try_for_each(Code::validate)
            }
        }
    }

    /// Decodes the code to the outcome sequence it denotes.
    pub fn decode(&self) -> Result<Vec<i64>, MdlError> {
        self.validate()?;
        let mut out = Vec::new();
        self.decode_into(&mut out);
        Ok(out)
    }

    fn decode_into(&self, out: &mut Vec<i64>) {
        match self {
            Code::Literal(lit) => out.push(lit.value),
            Code::ArithSeq { start, step, length } => {
                // validated: every term fits in the domain, hence in i64
                for i in 0..*length as i128 {
                    out.push((start.value as i128 + *step as i128 * i) as i64);
                }
            }
            Code::Repeat { body, count } => {
                let from = out.len();
                body.decode_into(out);
                let to = out.len();
                for _ in 1..*count {
                    out.extend_from_within(from..to);
                }
            }
            Code::Concat { parts } => parts.iter().for_each(|p| p.decode_into(out)),
        }
    }

    fn tally(&self, t: &mut CostTally) {
        t.fixed += TAG_BITS;
        match self {
            Code::Literal(lit) => t.add_literal(lit.domain.width()),
            Code::ArithSeq { start, step, length } => {
                Code::Literal(*start).tally(t);
                t.fixed += integer_bits(step.unsigned_abs()) + SIGN_BITS + integer_bits(*length);
            }
            Code::Repeat { body, count } => {
                body.tally(t);
                t.fixed += integer_bits(*count);
            }
            Code::Concat { parts } => {
                parts.iter().for_each(|p| p.tally(t));
                t.fixed += integer_bits(parts.len() as u64);
            }
        }
    }
}

fn malformed(e: MdlError) -> MdlError {
    MdlError::Malformed(e.to_string())
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Code::Literal(lit) => write!(f, "lit({})", lit.value),
            Code::ArithSeq { start, step, length } => {
                write!(f, "arith({}, {:+}, {})", start.value, step, length)
            }
            Code::Repeat { body, count } => write!(f, "repeat({body}, {count})"),
            Code::Concat { parts } => {
                f.write_str("concat[")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{p}")?;
                }
                f.write_str("]")
            }
        }
    }
}

/// Exact decomposition of a code cost: integer bits plus `log2(width)` per
/// literal, grouped by domain width. Evaluating the tally in a fixed order
/// makes equal codes produce bit-identical costs.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub(crate) struct CostTally {
    pub fixed: u64,
    pub literals: BTreeMap<u64, u64>,
}

impl CostTally {
    fn add_literal(&mut self, width: u64) {
        *self.literals.entry(width).or_default() += 1;
    }

    pub fn bits(&self) -> f64 {
        self.literals.iter().fold(self.fixed as f64, |acc, (&w, &n)| acc + n as f64 * (w as f64).log2())
    }
}

/// Length in bits of the Elias-gamma code of `v + 1`: `2 * floor(log2(v + 1)) + 1`.
pub(crate) fn integer_bits(v: u64) -> u64 {
    let n = v as u128 + 1;
    2 * u64::from(n.ilog2()) + 1
}

/// Self-delimiting cost of an unbounded non-negative integer (steps, lengths, counts).
pub fn integer_cost(v: u64) -> BitCost {
    BitCost::new(integer_bits(v) as f64).expect("integer cost is a small positive integer")
}

/// Exact bit cost of a well-formed code.
///
/// | production | cost |
/// |---|---|
/// | `Literal(v, [lo, hi])` | tag + log2(hi − lo + 1) |
/// | `ArithSeq(start, step, n)` | tag + cost(start) + int(\|step\|) + 1 + int(n) |
/// | `Repeat(body, c)` | tag + cost(body) + int(c) |
/// | `Concat(p1..pm)` | tag + Σ cost(pi) + int(m) |
pub fn code_cost(code: &Code) -> Result<BitCost, MdlError> {
    code.validate()?;
    let mut t = CostTally::default();
    code.tally(&mut t);
    Ok(BitCost::new(t.bits()).expect("sum of non-negative terms"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(lo: i64, hi: i64) -> Domain {
        Domain::new(lo, hi).unwrap()
    }

    fn lit(v: i64, lo: i64, hi: i64) -> Literal {
        Literal::new(v, d(lo, hi)).unwrap()
    }

    #[test]
    fn integer_cost_examples() {
        // direct formula, independent of ilog2
        let direct = |v: u64| 2.0 * ((v as f64 + 1.0).log2().floor()) + 1.0;
        assert_eq!(integer_cost(0).bits(), 1.0);
        assert_eq!(integer_cost(1).bits(), 3.0);
        assert_eq!(integer_cost(6).bits(), 5.0);
        for v in 0..5000u64 {
            assert_eq!(integer_cost(v).bits(), direct(v), "v = {v}");
        }
        assert_eq!(integer_cost(u64::MAX).bits(), 129.0);
    }

    #[test]
    fn integer_cost_is_monotone() {
        let mut prev = 0.0;
        for v in 0..100_000u64 {
            let c = integer_cost(v).bits();
            assert!(c >= prev);
            prev = c;
        }
    }

    #[test]
    fn literal_costs() {
        let c = code_cost(&Code::Literal(lit(22, 1, 49))).unwrap().bits();
        assert!((c - (2.0 + 49f64.log2())).abs() < 1e-12);
        assert!((c - 7.6147).abs() < 1e-4);
        assert_eq!(code_cost(&Code::Literal(lit(1, 1, 1))).unwrap().bits(), 2.0);
    }

    #[test]
    fn literal_cost_monotone_in_domain_width() {
        let mut prev = 0.0;
        for hi in 1..500 {
            let c = code_cost(&Code::Literal(lit(1, 1, hi))).unwrap().bits();
            assert!(c > prev || hi == 1);
            prev = c;
        }
    }

    #[test]
    fn arith_seq_cost() {
        let code = Code::ArithSeq { start: lit(22, 1, 49), step: 1, length: 6 };
        let c = code_cost(&code).unwrap().bits();
        // 2 + (2 + log2 49) + 3 + 1 + 5
        assert!((c - (13.0 + 49f64.log2())).abs() < 1e-12);
        assert!((c - 18.6147).abs() < 1e-4);
        assert_eq!(code.decode().unwrap(), vec![22, 23, 24, 25, 26, 27]);
    }

    #[test]
    fn repeat_and_concat_decode() {
        let body = Code::Concat { parts: vec![Code::Literal(lit(1, 0, 9)), Code::Literal(lit(2, 0, 9))] };
        let code = Code::Repeat { body: Box::new(body), count: 3 };
        assert_eq!(code.decode().unwrap(), vec![1, 2, 1, 2, 1, 2]);
        // 2 + [2 + 2*(2 + log2 10) + int(2)=3] + int(3)=5
        let c = code_cost(&code).unwrap().bits();
        assert!((c - (16.0 + 2.0 * 10f64.log2())).abs() < 1e-12);
    }

    #[test]
    fn malformed_codes_are_rejected() {
        let bad = Code::Literal(Literal { value: 50, domain: d(1, 49) });
        assert!(matches!(code_cost(&bad), Err(MdlError::Malformed(_))));
        let leaves = Code::ArithSeq { start: lit(45, 1, 49), step: 2, length: 4 };
        assert!(matches!(leaves.decode(), Err(MdlError::Malformed(_))));
        let empty = Code::Concat { parts: vec![] };
        assert!(empty.decode().is_err());
        let zero = Code::Repeat { body: Box::new(Code::Literal(lit(1, 1, 2))), count: 0 };
        assert!(zero.decode().is_err());
        assert!(Literal::new(0, d(1, 49)).is_err());
    }

    #[test]
    fn domain_validation() {
        assert!(Domain::new(5, 4).is_err());
        assert!(Domain::new(i64::MIN, i64::MAX).is_err());
        assert_eq!(Domain::new(i64::MIN, i64::MAX - 1).unwrap().width(), u64::MAX);
        assert_eq!(d(1, 49).width(), 49);
    }

    #[test]
    fn serde_round_trip_validates_domains() {
        let code =
            Code::Repeat { body: Box::new(Code::ArithSeq { start: lit(2, 1, 9), step: 3, length: 3 }), count: 2 };
        let json = serde_json::to_string(&code).unwrap();
        assert_eq!(serde_json::from_str::<Code>(&json).unwrap(), code);
        let bad = r#"{"kind":"literal","value":3,"domain":{"lo":9,"hi":1}}"#;
        assert!(serde_json::from_str::<Code>(bad).is_err());
    }

    #[test]
    fn display_is_compact() {
        let code = Code::Concat {
            parts: vec![
                Code::ArithSeq { start: lit(3, 1, 9), step: -1, length: 3 },
                Code::Repeat { body: Box::new(Code::Literal(lit(7, 1, 9))), count: 2 },
            ],
        };
        assert_eq!(code.to_string(), "concat[arith(3, -1, 3), repeat(lit(7), 2)]");
    }
}
