//! Machine-readable records. Floats carry 17 significant digits so that every
//! printed value parses back to the same `f64`.

use std::io::Write;

use serde::Serialize;
use serde_json::ser::{Formatter, Serializer};
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Formula,
    Simulation,
    IdentityCheck,
}

#[derive(Debug, Clone, Serialize)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub outputs: Map<String, Value>,
    pub provenance: Provenance,
}

impl OutputRecord {
    pub fn new(command: &str, provenance: Provenance) -> Self {
        OutputRecord {
            command: command.into(),
            inputs: Map::new(),
            outputs: Map::new(),
            provenance,
        }
    }

    pub fn input(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.inputs.insert(key.into(), value.into());
        self
    }

    pub fn output(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.outputs.insert(key.into(), value.into());
        self
    }

    pub fn to_line(&self) -> String {
        json_line(self)
    }
}

/// Compact JSON writing every float through [`sig17`].
struct Sig17;

impl Formatter for Sig17 {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()> {
        writer.write_all(sig17(value).as_bytes())
    }
}

pub fn json_line(value: &impl Serialize) -> String {
    let mut buf = Vec::new();
    value
        .serialize(&mut Serializer::with_formatter(&mut buf, Sig17))
        .expect("records serialize");
    String::from_utf8(buf).expect("JSON is UTF-8")
}

/// `x` with 17 significant digits, positional unless the exponent is extreme.
pub fn sig17(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0.0".into() } else { "0.0".into() };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    if (0..16).contains(&exp) {
        let (int, frac) = digits.split_at(exp as usize + 1);
        format!("{sign}{int}.{frac}")
    } else if (-7..0).contains(&exp) {
        format!("{sign}0.{}{digits}", "0".repeat((-exp - 1) as usize))
    } else {
        format!("{sign}{}.{}e{exp}", &digits[..1], &digits[1..])
    }
}

/// A JSON number with 17 significant digits; non-finite values become `null`.
pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    Value::from(x)
}

pub fn print_lines<'a>(out: &mut impl Write, records: impl IntoIterator<Item = &'a OutputRecord>) -> std::io::Result<()> {
    for r in records {
        writeln!(out, "{}", r.to_line())?;
    }
    Ok(())
}
