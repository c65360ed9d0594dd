//! Line-oriented circuit files.
//!
//! ```text
//! qubits 2        # header, required before any instruction
//! h 0
//! cnot 0 1
//! measure 1       # optional forced outcome: `measure 1 0`
//! ```

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    H,
    S,
    Sdg,
    X,
    Y,
    Z,
}

impl Gate {
    pub fn mnemonic(self) -> &'static str {
        match self {
            Gate::H => "h",
            Gate::S => "s",
            Gate::Sdg => "sdg",
            Gate::X => "x",
            Gate::Y => "y",
            Gate::Z => "z",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Instruction {
    Gate { gate: Gate, qubit: usize },
    Cz { a: usize, b: usize },
    Cnot { control: usize, target: usize },
    Measure { qubit: usize, forced: Option<u8> },
}

impl Instruction {
    fn qubits(&self) -> (usize, Option<usize>) {
        match *self {
            Instruction::Gate { qubit, .. } | Instruction::Measure { qubit, .. } => (qubit, None),
            Instruction::Cz { a, b } => (a, Some(b)),
            Instruction::Cnot { control, target } => (control, Some(target)),
        }
    }
}

impl fmt::Display for Instruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instruction::Gate { gate, qubit } => write!(f, "{} {qubit}", gate.mnemonic()),
            Instruction::Cz { a, b } => write!(f, "cz {a} {b}"),
            Instruction::Cnot { control, target } => write!(f, "cnot {control} {target}"),
            Instruction::Measure {
                qubit,
                forced: None,
            } => write!(f, "measure {qubit}"),
            Instruction::Measure {
                qubit,
                forced: Some(bit),
            } => write!(f, "measure {qubit} {bit}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    n: usize,
    instructions: Vec<Instruction>,
}

impl Circuit {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyRegister);
        }
        Ok(Circuit {
            n,
            instructions: Vec::new(),
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn instructions(&self) -> &[Instruction] {
        &self.instructions
    }

    pub fn len(&self) -> usize {
        self.instructions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instructions.is_empty()
    }

    pub fn push(&mut self, ins: Instruction) -> Result<()> {
        let (a, b) = ins.qubits();
        for q in std::iter::once(a).chain(b) {
            if q >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: q,
                    n: self.n,
                });
            }
        }
        if b == Some(a) {
            return Err(Error::IdenticalOperands(a));
        }
        if let Instruction::Measure {
            forced: Some(bit), ..
        } = ins
        {
            if bit > 1 {
                return Err(Error::ContractViolation(format!(
                    "forced outcome {bit} is not a bit"
                )));
            }
        }
        self.instructions.push(ins);
        Ok(())
    }

    pub fn gate(&mut self, gate: Gate, qubit: usize) -> Result<&mut Self> {
        self.push(Instruction::Gate { gate, qubit })?;
        Ok(self)
    }

    pub fn cz(&mut self, a: usize, b: usize) -> Result<&mut Self> {
        self.push(Instruction::Cz { a, b })?;
        Ok(self)
    }

    pub fn cnot(&mut self, control: usize, target: usize) -> Result<&mut Self> {
        self.push(Instruction::Cnot { control, target })?;
        Ok(self)
    }

    pub fn measure(&mut self, qubit: usize, forced: Option<u8>) -> Result<&mut Self> {
        self.push(Instruction::Measure { qubit, forced })?;
        Ok(self)
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "qubits {}", self.n)?;
        for ins in &self.instructions {
            writeln!(f, "{ins}")?;
        }
        Ok(())
    }
}

const NON_CLIFFORD: &[&str] = &[
    "t", "tdg", "rx", "ry", "rz", "u", "u1", "u2", "u3", "ccx", "toffoli", "ccz", "cswap",
];

pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let mut circuit: Option<Circuit> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let mnemonic = fields.next().unwrap_or_default().to_ascii_lowercase();
        let args: Vec<&str> = fields.collect();
        let number = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| err(format!("expected a non-negative integer, found {s:?}")))
        };
        let arity = |want: usize| {
            if args.len() == want {
                Ok(())
            } else {
                Err(err(format!(
                    "`{mnemonic}` takes {want} operand(s), found {}",
                    args.len()
                )))
            }
        };

        if mnemonic == "qubits" {
            if circuit.is_some() {
                return Err(err("duplicate `qubits` header".into()));
            }
            arity(1)?;
            let n = number(args[0])?;
            circuit = Some(Circuit::new(n).map_err(|e| err(e.to_string()))?);
            continue;
        }
        let Some(c) = circuit.as_mut() else {
            return Err(err("missing `qubits <n>` header".into()));
        };
        let ins = match mnemonic.as_str() {
            "h" | "s" | "sdg" | "x" | "y" | "z" => {
                arity(1)?;
                let gate = match mnemonic.as_str() {
                    "h" => Gate::H,
                    "s" => Gate::S,
                    "sdg" => Gate::Sdg,
                    "x" => Gate::X,
                    "y" => Gate::Y,
                    _ => Gate::Z,
                };
                Instruction::Gate {
                    gate,
                    qubit: number(args[0])?,
                }
            }
            "cz" | "cnot" => {
                arity(2)?;
                let (a, b) = (number(args[0])?, number(args[1])?);
                if mnemonic == "cz" {
                    Instruction::Cz { a, b }
                } else {
                    Instruction::Cnot {
                        control: a,
                        target: b,
                    }
                }
            }
            "measure" => {
                if args.is_empty() || args.len() > 2 {
                    return Err(err(format!(
                        "`measure` takes 1 or 2 operands, found {}",
                        args.len()
                    )));
                }
                let forced = match args.get(1) {
                    None => None,
                    Some(&"0") => Some(0),
                    Some(&"1") => Some(1),
                    Some(other) => {
                        return Err(err(format!(
                            "forced outcome must be 0 or 1, found {other:?}"
                        )))
                    }
                };
                Instruction::Measure {
                    qubit: number(args[0])?,
                    forced,
                }
            }
            m if NON_CLIFFORD.contains(&m) => {
                return Err(err(format!("`{m}` is not a Clifford gate")));
            }
            m => return Err(err(format!("unknown mnemonic `{m}`"))),
        };
        c.push(ins).map_err(|e| err(e.to_string()))?;
    }
    circuit.ok_or(Error::Parse {
        line: text.lines().count().max(1),
        message: "missing `qubits <n>` header".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal() {
        let c = parse_circuit("qubits 1\nh 0\nmeasure 0").unwrap();
        assert_eq!(c.num_qubits(), 1);
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn comments_blank_lines_and_case() {
        let c =
            parse_circuit("# bell\n\nQUBITS 2\nH 0   # first\nCNOT 0 1\nMeasure 1 0\n").unwrap();
        assert_eq!(
            c.instructions(),
            &[
                Instruction::Gate {
                    gate: Gate::H,
                    qubit: 0
                },
                Instruction::Cnot {
                    control: 0,
                    target: 1
                },
                Instruction::Measure {
                    qubit: 1,
                    forced: Some(0)
                },
            ]
        );
    }

    fn line_of(text: &str) -> usize {
        match parse_circuit(text) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(line_of("qubits 2\ncz 0 0"), 2);
        assert_eq!(line_of("qubits 2\nh 0\nfoo 1"), 3);
        assert_eq!(line_of("qubits 2\nh 0 1"), 2);
        assert_eq!(line_of("qubits 2\nh 2"), 2);
        assert_eq!(line_of("h 0"), 1);
        assert_eq!(line_of("qubits 1\nt 0"), 2);
        assert_eq!(line_of("qubits 1\nmeasure 0 2"), 2);
        assert_eq!(line_of("qubits 0"), 1);
        assert_eq!(line_of(""), 1);
    }

    #[test]
    fn display_round_trip() {
        let text = "qubits 3\nh 0\nsdg 1\ncz 0 2\ncnot 2 1\nmeasure 1\nmeasure 0 1\n";
        assert_eq!(parse_circuit(text).unwrap().to_string(), text);
    }
}
