use std::fmt;
use std::str::FromStr;

use crate::error::QromError;

/// One instruction of the QROM IR.
///
/// Qubits `0..η` hold the address `x` (bit `i` of `x` on qubit `i`); qubits
/// `η..η+b` hold the payload register, least significant bit first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Gate {
    /// Flips every payload bit when `x · mask` is odd.
    Pfx { mask: u64, width: u32 },
    /// Adds the classical constant `k` modulo `2^width`.
    Adder { k: i64, width: u32 },
    /// Adds `k` modulo `2^width` when qubit `control` is set.
    ControlledAdder { k: i64, width: u32, control: usize },
    Cnot { control: usize, target: usize },
    CSwap { control: usize, pairs: Vec<(usize, usize)> },
    X(usize),
    Hadamard(usize),
    S(usize),
    Sdg(usize),
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::Pfx { mask, width } => write!(f, "PFX {mask:x} {width}"),
            Gate::Adder { k, width } => write!(f, "ADD {k} {width}"),
            Gate::ControlledAdder { k, width, control } => write!(f, "CADD {k} {width} {control}"),
            Gate::Cnot { control, target } => write!(f, "CNOT {control} {target}"),
            Gate::CSwap { control, pairs } => {
                write!(f, "CSWAP {control}")?;
                for (a, b) in pairs {
                    write!(f, " {a}:{b}")?;
                }
                Ok(())
            }
            Gate::X(t) => write!(f, "X {t}"),
            Gate::Hadamard(t) => write!(f, "H {t}"),
            Gate::S(t) => write!(f, "S {t}"),
            Gate::Sdg(t) => write!(f, "SDG {t}"),
        }
    }
}

impl FromStr for Gate {
    type Err = QromError;

    fn from_str(line: &str) -> Result<Self, Self::Err> {
        let bad = || QromError::Parse(line.to_string());
        let mut it = line.split_whitespace();
        let op = it.next().ok_or_else(bad)?;
        let args: Vec<&str> = it.collect();
        let num = |i: usize| -> Result<i64, QromError> {
            args.get(i).and_then(|s| s.parse().ok()).ok_or_else(bad)
        };
        let idx = |i: usize| -> Result<usize, QromError> {
            args.get(i).and_then(|s| s.parse().ok()).ok_or_else(bad)
        };
        let arity = |n: usize| if args.len() == n { Ok(()) } else { Err(bad()) };
        Ok(match op {
            "PFX" => {
                arity(2)?;
                Gate::Pfx {
                    mask: u64::from_str_radix(args[0], 16).map_err(|_| bad())?,
                    width: idx(1)? as u32,
                }
            }
            "ADD" => {
                arity(2)?;
                Gate::Adder { k: num(0)?, width: idx(1)? as u32 }
            }
            "CADD" => {
                arity(3)?;
                Gate::ControlledAdder { k: num(0)?, width: idx(1)? as u32, control: idx(2)? }
            }
            "CNOT" => {
                arity(2)?;
                Gate::Cnot { control: idx(0)?, target: idx(1)? }
            }
            "CSWAP" => {
                let control = idx(0)?;
                let pairs = args[1..]
                    .iter()
                    .map(|p| {
                        let (a, b) = p.split_once(':').ok_or_else(bad)?;
                        Ok((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?))
                    })
                    .collect::<Result<Vec<_>, QromError>>()?;
                Gate::CSwap { control, pairs }
            }
            "X" => {
                arity(1)?;
                Gate::X(idx(0)?)
            }
            "H" => {
                arity(1)?;
                Gate::Hadamard(idx(0)?)
            }
            "S" => {
                arity(1)?;
                Gate::S(idx(0)?)
            }
            "SDG" => {
                arity(1)?;
                Gate::Sdg(idx(0)?)
            }
            _ => return Err(bad()),
        })
    }
}

/// `k` reduced modulo `2^width` into `[-2^(width-1), 2^(width-1))`.
pub fn wrap_signed(k: i128, width: u32) -> i64 {
    let m = 1i128 << width;
    let mut r = k.rem_euclid(m);
    if r >= m / 2 {
        r -= m;
    }
    r as i64
}
