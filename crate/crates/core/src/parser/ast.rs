use num_rational::BigRational;

/// Byte range in the source text.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    pub fn join(self, other: Span) -> Span {
        Span::new(self.start.min(other.start), self.end.max(other.end))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumOp {
    Add,
    Sub,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductOp {
    Mul,
    Div,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Sum(SumOp, Box<ExprAst>, Box<ExprAst>),
    Product(ProductOp, Box<ExprAst>, Box<ExprAst>),
    /// Integer exponent. Negative exponents are accepted by the grammar and
    /// rejected at lowering unless the base is a scalar monomial.
    Power(Box<ExprAst>, i64),
    Neg(Box<ExprAst>),
    Commutator(Box<ExprAst>, Box<ExprAst>),
    GenX,
    GenP,
    ImagUnit,
    /// A commuting parameter; `hbar` is `Param("hbar")`.
    Param(String),
    RationalLit(BigRational),
    Paren(Box<ExprAst>),
}

/// Parse tree of an operator expression, one span per node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprAst {
    pub kind: ExprKind,
    pub span: Span,
}

impl ExprAst {
    pub fn new(kind: ExprKind, span: Span) -> Self {
        ExprAst { kind, span }
    }

    /// Structural equality ignoring spans.
    pub fn same_shape(&self, other: &ExprAst) -> bool {
        use ExprKind::*;
        match (&self.kind, &other.kind) {
            (Sum(o1, a1, b1), Sum(o2, a2, b2)) => o1 == o2 && a1.same_shape(a2) && b1.same_shape(b2),
            (Product(o1, a1, b1), Product(o2, a2, b2)) => {
                o1 == o2 && a1.same_shape(a2) && b1.same_shape(b2)
            }
            (Power(a1, e1), Power(a2, e2)) => e1 == e2 && a1.same_shape(a2),
            (Neg(a1), Neg(a2)) | (Paren(a1), Paren(a2)) => a1.same_shape(a2),
            (Commutator(a1, b1), Commutator(a2, b2)) => a1.same_shape(a2) && b1.same_shape(b2),
            (GenX, GenX) | (GenP, GenP) | (ImagUnit, ImagUnit) => true,
            (Param(n1), Param(n2)) => n1 == n2,
            (RationalLit(r1), RationalLit(r2)) => r1 == r2,
            _ => false,
        }
    }

    /// Upper bound on the total `x`/`p` degree of the expression once
    /// expanded, used to size trusted blocks in the matrix oracle.
    pub fn degree_bound(&self) -> u32 {
        use ExprKind::*;
        match &self.kind {
            Sum(_, a, b) => a.degree_bound().max(b.degree_bound()),
            Commutator(a, b) | Product(ProductOp::Mul, a, b) => a.degree_bound() + b.degree_bound(),
            Product(ProductOp::Div, a, _) => a.degree_bound(),
            Power(a, e) => a.degree_bound() * (*e).max(0) as u32,
            Neg(a) | Paren(a) => a.degree_bound(),
            GenX | GenP => 1,
            ImagUnit | Param(_) | RationalLit(_) => 0,
        }
    }
}
