//! Named strategy tables and the module expression language.
//!
//! A [`Registry`] maps names to boxed trait objects so callers can pick an
//! implementation at runtime. Module expressions such as
//! `tensor(adj, det)` or `irrep(2,1,0)` are parsed here and evaluated
//! through the table returned by [`module_constructors`].

use crate::error::{Error, Result};
use crate::glmodules::{
    adjoint_module, determinant_module, ext_power, irrep_plucker, standard_module, sym_power, tensor,
    trivial_module, ExplicitModule,
};
use crate::weights::Partition;

pub struct Registry<T: ?Sized> {
    kind: &'static str,
    entries: Vec<(&'static str, Box<T>)>,
}

impl<T: ?Sized> Registry<T> {
    pub fn new(kind: &'static str) -> Self {
        Registry {
            kind,
            entries: Vec::new(),
        }
    }

    /// Adds an entry. A later registration under the same name replaces the earlier one.
    pub fn register(&mut self, name: &'static str, item: Box<T>) {
        if let Some(slot) = self.entries.iter_mut().find(|(n, _)| *n == name) {
            slot.1 = item;
        } else {
            self.entries.push((name, item));
        }
    }

    pub fn get(&self, name: &str) -> Result<&T> {
        self.entries
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, item)| item.as_ref())
            .ok_or_else(|| {
                Error::Argument(format!(
                    "unknown {} '{name}' (available: {})",
                    self.kind,
                    self.names().join(", ")
                ))
            })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|(n, _)| *n).collect()
    }
}

/// An evaluated argument of a module expression.
pub enum ModuleArg {
    Int(i64),
    Module(ExplicitModule),
}

pub trait ModuleConstructor: Send + Sync {
    /// Usage string, e.g. `sym(k)`.
    fn signature(&self) -> &'static str;
    fn build(&self, n: usize, args: Vec<ModuleArg>) -> Result<ExplicitModule>;
}

struct FnConstructor {
    signature: &'static str,
    build: fn(usize, Vec<ModuleArg>) -> Result<ExplicitModule>,
}

impl ModuleConstructor for FnConstructor {
    fn signature(&self) -> &'static str {
        self.signature
    }

    fn build(&self, n: usize, args: Vec<ModuleArg>) -> Result<ExplicitModule> {
        (self.build)(n, args)
    }
}

fn no_args(sig: &str, args: &[ModuleArg]) -> Result<()> {
    if !args.is_empty() {
        return Err(Error::Parse(format!("{sig} takes no arguments")));
    }
    Ok(())
}

fn one_nat(sig: &str, args: Vec<ModuleArg>) -> Result<usize> {
    match args.as_slice() {
        [ModuleArg::Int(k)] if *k >= 0 => Ok(*k as usize),
        _ => Err(Error::Parse(format!("expected {sig} with one nonnegative integer"))),
    }
}

type BuildFn = fn(usize, Vec<ModuleArg>) -> Result<ExplicitModule>;

pub fn module_constructors() -> Registry<dyn ModuleConstructor> {
    let mut r: Registry<dyn ModuleConstructor> = Registry::new("module");
    let table: [(&'static str, &'static str, BuildFn); 8] = [
        ("std", "std", |n, a| {
            no_args("std", &a)?;
            standard_module(n)
        }),
        ("triv", "triv", |n, a| {
            no_args("triv", &a)?;
            trivial_module(n)
        }),
        ("det", "det", |n, a| {
            no_args("det", &a)?;
            determinant_module(n)
        }),
        ("adj", "adj", |n, a| {
            no_args("adj", &a)?;
            adjoint_module(n)
        }),
        ("sym", "sym(k)", |n, a| sym_power(one_nat("sym(k)", a)?, n)),
        ("ext", "ext(k)", |n, a| ext_power(one_nat("ext(k)", a)?, n)),
        ("tensor", "tensor(A, B)", |_, a| match a.as_slice() {
            [ModuleArg::Module(x), ModuleArg::Module(y)] => tensor(x, y),
            _ => Err(Error::Parse("expected tensor(A, B) with two modules".into())),
        }),
        ("irrep", "irrep(l1, ..., ln)", |n, a| {
            let parts = a
                .iter()
                .map(|x| match x {
                    ModuleArg::Int(k) if *k >= 0 => Ok(*k as usize),
                    _ => Err(Error::Parse("irrep takes nonnegative integers".into())),
                })
                .collect::<Result<Vec<_>>>()?;
            irrep_plucker(&Partition::new(parts)?, n)
        }),
    ];
    for (name, signature, build) in table {
        r.register(name, Box::new(FnConstructor { signature, build }));
    }
    r
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    Call(String, Vec<Expr>),
}

/// Parses `name`, `name(arg, ...)` or an integer literal.
pub fn parse_module_expr(src: &str) -> Result<Expr> {
    let tokens = tokenize(src)?;
    let mut pos = 0;
    let e = parse_expr(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(Error::Parse(format!("trailing input in '{src}'")));
    }
    Ok(e)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Open,
    Close,
    Comma,
}

fn tokenize(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '(' => {
                out.push(Tok::Open);
                i += 1;
            }
            ')' => {
                out.push(Tok::Close);
                i += 1;
            }
            ',' => {
                out.push(Tok::Comma);
                i += 1;
            }
            '-' | '0'..='9' => {
                let start = i;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let v = s.parse().map_err(|_| Error::Parse(format!("bad integer '{s}'")))?;
                out.push(Tok::Int(v));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character '{other}'"))),
        }
    }
    Ok(out)
}

fn parse_expr(tokens: &[Tok], pos: &mut usize) -> Result<Expr> {
    match tokens.get(*pos) {
        Some(Tok::Int(v)) => {
            *pos += 1;
            Ok(Expr::Int(*v))
        }
        Some(Tok::Ident(name)) => {
            *pos += 1;
            let mut args = Vec::new();
            if tokens.get(*pos) == Some(&Tok::Open) {
                *pos += 1;
                if tokens.get(*pos) == Some(&Tok::Close) {
                    *pos += 1;
                    return Ok(Expr::Call(name.clone(), args));
                }
                loop {
                    args.push(parse_expr(tokens, pos)?);
                    match tokens.get(*pos) {
                        Some(Tok::Comma) => *pos += 1,
                        Some(Tok::Close) => {
                            *pos += 1;
                            break;
                        }
                        _ => return Err(Error::Parse(format!("expected ',' or ')' after argument of {name}"))),
                    }
                }
            }
            Ok(Expr::Call(name.clone(), args))
        }
        _ => Err(Error::Parse("expected a module name or integer".into())),
    }
}

/// Evaluates a module expression for gl_n.
pub fn build_module(src: &str, n: usize) -> Result<ExplicitModule> {
    let expr = parse_module_expr(src)?;
    let table = module_constructors();
    match eval(&expr, n, &table)? {
        ModuleArg::Module(m) => Ok(m),
        ModuleArg::Int(_) => Err(Error::Parse(format!("'{src}' is an integer, not a module"))),
    }
}

fn eval(e: &Expr, n: usize, table: &Registry<dyn ModuleConstructor>) -> Result<ModuleArg> {
    match e {
        Expr::Int(v) => Ok(ModuleArg::Int(*v)),
        Expr::Call(name, args) => {
            let ctor = table.get(name)?;
            let args = args.iter().map(|a| eval(a, n, table)).collect::<Result<Vec<_>>>()?;
            Ok(ModuleArg::Module(ctor.build(n, args)?))
        }
    }
}
