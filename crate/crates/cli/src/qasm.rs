//! OpenQASM 2.0 subset: one `qreg` and the gates `h`, `x`, `z`, `ry`, `cx`,
//! `cz`. Only lowered circuits can be emitted. Angles are written with 17
//! significant digits so that parsing recovers the exact `f64`.

use std::fmt::{self, Write as _};

use qsuperpose::{Circuit, CircuitBuilder, CircuitError, Gate, Level, Qubit};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot emit a {0} circuit as OpenQASM; lower it first")]
pub struct NotLoweredError(pub Level);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    MissingHeader,
    UnsupportedVersion(String),
    UnsupportedInclude(String),
    GateOutsideSubset(String),
    UnexpectedToken { expected: &'static str, found: String },
    UnexpectedEof { expected: &'static str },
    MissingRegister,
    DuplicateRegister,
    UnknownRegister(String),
    QubitOutOfRange { index: usize, size: usize },
    WrongArity { gate: String, expected: usize, found: usize },
    BadParameter(String),
    Circuit(CircuitError),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::MissingHeader => write!(f, "missing `OPENQASM 2.0;` header"),
            ParseErrorKind::UnsupportedVersion(v) => write!(f, "unsupported OpenQASM version {v}"),
            ParseErrorKind::UnsupportedInclude(s) => write!(f, "unsupported include \"{s}\""),
            ParseErrorKind::GateOutsideSubset(g) => write!(f, "gate outside subset: `{g}`"),
            ParseErrorKind::UnexpectedToken { expected, found } => {
                write!(f, "expected {expected}, found `{found}`")
            }
            ParseErrorKind::UnexpectedEof { expected } => {
                write!(f, "expected {expected}, found end of input")
            }
            ParseErrorKind::MissingRegister => write!(f, "gate used before any `qreg` declaration"),
            ParseErrorKind::DuplicateRegister => write!(f, "only one `qreg` is supported"),
            ParseErrorKind::UnknownRegister(r) => write!(f, "unknown register `{r}`"),
            ParseErrorKind::QubitOutOfRange { index, size } => {
                write!(f, "qubit index {index} out of range for register of size {size}")
            }
            ParseErrorKind::WrongArity { gate, expected, found } => {
                write!(f, "`{gate}` takes {expected} qubit(s), got {found}")
            }
            ParseErrorKind::BadParameter(msg) => write!(f, "bad gate parameter: {msg}"),
            ParseErrorKind::Circuit(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

pub fn emit(circuit: &Circuit) -> Result<String, NotLoweredError> {
    if circuit.level() != Level::Lowered {
        return Err(NotLoweredError(circuit.level()));
    }
    let mut out = String::new();
    out.push_str("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    writeln!(out, "qreg q[{}];", circuit.n_qubits()).unwrap();
    for g in circuit.gates() {
        let line = match *g {
            Gate::H(t) => format!("h q[{}];", t.0),
            Gate::X(t) => format!("x q[{}];", t.0),
            Gate::Z(t) => format!("z q[{}];", t.0),
            Gate::Ry { theta, target } => format!("ry({theta:.16e}) q[{}];", target.0),
            Gate::CNOT { control, target } => format!("cx q[{}],q[{}];", control.0, target.0),
            Gate::CZ { control, target } => format!("cz q[{}],q[{}];", control.0, target.0),
            Gate::G { .. } | Gate::CG { .. } | Gate::ZeroCH { .. } => {
                unreachable!("lowered circuits hold no abstract gates")
            }
        };
        out.push_str(&line);
        out.push('\n');
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number(String),
    Str(String),
    Sym(char),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) | Tok::Number(s) => f.write_str(s),
            Tok::Str(s) => write!(f, "\"{s}\""),
            Tok::Sym(c) => write!(f, "{c}"),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(char::is_ascii_digit)) {
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            Tok::Number(chars[start..i].iter().collect())
        } else if c == '"' {
            i += 1;
            while i < chars.len() && chars[i] != '"' && chars[i] != '\n' {
                i += 1;
            }
            if chars.get(i) != Some(&'"') {
                return Err(ParseError {
                    line: start_line,
                    col: start_col,
                    kind: ParseErrorKind::UnexpectedEof {
                        expected: "closing `\"`",
                    },
                });
            }
            i += 1;
            Tok::Str(chars[start + 1..i - 1].iter().collect())
        } else {
            i += 1;
            Tok::Sym(c)
        };
        col += i - start;
        toks.push(Spanned {
            tok,
            line: start_line,
            col: start_col,
        });
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    eof: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        self.peek().map_or(self.eof, |t| (t.line, t.col))
    }

    fn err_at(&self, at: (usize, usize), kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: at.0,
            col: at.1,
            kind,
        }
    }

    fn next(&mut self, expected: &'static str) -> Result<Spanned, ParseError> {
        match self.toks.get(self.pos) {
            Some(t) => {
                self.pos += 1;
                Ok(t.clone())
            }
            None => Err(self.err_at(self.eof, ParseErrorKind::UnexpectedEof { expected })),
        }
    }

    fn unexpected(t: &Spanned, expected: &'static str) -> ParseError {
        ParseError {
            line: t.line,
            col: t.col,
            kind: ParseErrorKind::UnexpectedToken {
                expected,
                found: t.tok.to_string(),
            },
        }
    }

    fn sym(&mut self, c: char, expected: &'static str) -> Result<(), ParseError> {
        let t = self.next(expected)?;
        if t.tok == Tok::Sym(c) {
            Ok(())
        } else {
            Err(Self::unexpected(&t, expected))
        }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek().is_some_and(|t| t.tok == Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self, expected: &'static str) -> Result<(String, (usize, usize)), ParseError> {
        let t = self.next(expected)?;
        match t.tok {
            Tok::Ident(s) => Ok((s, (t.line, t.col))),
            _ => Err(Self::unexpected(&t, expected)),
        }
    }

    fn integer(&mut self, expected: &'static str) -> Result<usize, ParseError> {
        let t = self.next(expected)?;
        match &t.tok {
            Tok::Number(s) => s.parse().map_err(|_| Self::unexpected(&t, expected)),
            _ => Err(Self::unexpected(&t, expected)),
        }
    }

    // expr := term (('+' | '-') term)*
    fn expr(&mut self) -> Result<f64, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat_sym('+') {
                acc += self.term()?;
            } else if self.eat_sym('-') {
                acc -= self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    // term := unary (('*' | '/') unary)*
    fn term(&mut self) -> Result<f64, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat_sym('*') {
                acc *= self.unary()?;
            } else if self.eat_sym('/') {
                acc /= self.unary()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<f64, ParseError> {
        if self.eat_sym('-') {
            return Ok(-self.unary()?);
        }
        if self.eat_sym('+') {
            return self.unary();
        }
        let expected = "a number, `pi` or `(`";
        let t = self.next(expected)?;
        match &t.tok {
            Tok::Number(s) => s.parse().map_err(|_| Self::unexpected(&t, expected)),
            Tok::Ident(s) if s == "pi" => Ok(std::f64::consts::PI),
            Tok::Sym('(') => {
                let v = self.expr()?;
                self.sym(')', "`)`")?;
                Ok(v)
            }
            _ => Err(Self::unexpected(&t, expected)),
        }
    }
}

const SUBSET: [&str; 6] = ["h", "x", "z", "ry", "cx", "cz"];

/// Parses the supported subset into a lowered circuit.
pub fn parse(text: &str) -> Result<Circuit, ParseError> {
    let toks = lex(text)?;
    let eof = toks.last().map_or((1, 1), |t| (t.line, t.col + t.tok.to_string().len()));
    let mut p = Parser { toks, pos: 0, eof };

    let header_at = p.here();
    match p.peek() {
        Some(Spanned {
            tok: Tok::Ident(s), ..
        }) if s == "OPENQASM" => {
            p.pos += 1;
        }
        _ => return Err(p.err_at(header_at, ParseErrorKind::MissingHeader)),
    }
    let version = p.next("a version number")?;
    match &version.tok {
        Tok::Number(v) if v == "2.0" => {}
        Tok::Number(v) => {
            return Err(p.err_at(
                (version.line, version.col),
                ParseErrorKind::UnsupportedVersion(v.clone()),
            ))
        }
        _ => return Err(Parser::unexpected(&version, "a version number")),
    }
    p.sym(';', "`;`")?;

    let mut register: Option<(String, usize)> = None;
    let mut builder: Option<CircuitBuilder> = None;

    while p.peek().is_some() {
        let (word, at) = p.ident("a statement")?;
        match word.as_str() {
            "include" => {
                let t = p.next("a file name")?;
                match &t.tok {
                    Tok::Str(s) if s == "qelib1.inc" => {}
                    Tok::Str(s) => {
                        return Err(p.err_at((t.line, t.col), ParseErrorKind::UnsupportedInclude(s.clone())))
                    }
                    _ => return Err(Parser::unexpected(&t, "a file name")),
                }
                p.sym(';', "`;`")?;
            }
            "qreg" => {
                if register.is_some() {
                    return Err(p.err_at(at, ParseErrorKind::DuplicateRegister));
                }
                let (name, _) = p.ident("a register name")?;
                p.sym('[', "`[`")?;
                let size_at = p.here();
                let size = p.integer("a register size")?;
                p.sym(']', "`]`")?;
                p.sym(';', "`;`")?;
                let b = CircuitBuilder::new(size, Level::Lowered)
                    .map_err(|e| p.err_at(size_at, ParseErrorKind::Circuit(e)))?;
                register = Some((name, size));
                builder = Some(b);
            }
            gate if SUBSET.contains(&gate) => {
                let Some((reg, size)) = register.clone() else {
                    return Err(p.err_at(at, ParseErrorKind::MissingRegister));
                };
                let theta = if gate == "ry" {
                    p.sym('(', "`(`")?;
                    let param_at = p.here();
                    let v = p.expr()?;
                    p.sym(')', "`)`")?;
                    if !v.is_finite() {
                        return Err(p.err_at(param_at, ParseErrorKind::BadParameter("not finite".into())));
                    }
                    Some(v)
                } else {
                    None
                };
                let mut args = Vec::new();
                loop {
                    let (name, arg_at) = p.ident("a qubit argument")?;
                    if name != reg {
                        return Err(p.err_at(arg_at, ParseErrorKind::UnknownRegister(name)));
                    }
                    p.sym('[', "`[`")?;
                    let index_at = p.here();
                    let index = p.integer("a qubit index")?;
                    p.sym(']', "`]`")?;
                    if index >= size {
                        return Err(p.err_at(index_at, ParseErrorKind::QubitOutOfRange { index, size }));
                    }
                    args.push(Qubit(index));
                    if !p.eat_sym(',') {
                        break;
                    }
                }
                p.sym(';', "`;`")?;
                let arity = if gate.starts_with('c') { 2 } else { 1 };
                if args.len() != arity {
                    return Err(p.err_at(
                        at,
                        ParseErrorKind::WrongArity {
                            gate: gate.to_string(),
                            expected: arity,
                            found: args.len(),
                        },
                    ));
                }
                let g = match gate {
                    "h" => Gate::H(args[0]),
                    "x" => Gate::X(args[0]),
                    "z" => Gate::Z(args[0]),
                    "ry" => Gate::Ry {
                        theta: theta.unwrap_or_default(),
                        target: args[0],
                    },
                    "cx" => Gate::CNOT {
                        control: args[0],
                        target: args[1],
                    },
                    _ => Gate::CZ {
                        control: args[0],
                        target: args[1],
                    },
                };
                builder
                    .as_mut()
                    .expect("register declared")
                    .append(g)
                    .map_err(|e| p.err_at(at, ParseErrorKind::Circuit(e)))?;
            }
            other => return Err(p.err_at(at, ParseErrorKind::GateOutsideSubset(other.to_string()))),
        }
    }

    builder
        .map(CircuitBuilder::freeze)
        .ok_or_else(|| p.err_at(p.eof, ParseErrorKind::MissingRegister))
}
