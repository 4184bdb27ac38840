use crate::error::{Error, Result};
use crate::field::Field;
use crate::op::{lclm_all, right_divide, DiffOp, RatOp};

/// Product (left to right) and direct-sum structure of an operator.
#[derive(Clone, Debug, PartialEq)]
pub enum FactorNode<F: Field> {
    Leaf { name: String, op: DiffOp<F> },
    Product(Vec<FactorNode<F>>),
    DirectSum(Vec<FactorNode<F>>),
}

impl<F: Field> FactorNode<F> {
    pub fn leaf(name: impl Into<String>, op: DiffOp<F>) -> Self {
        FactorNode::Leaf { name: name.into(), op }
    }

    /// Multiply products and take lclm of summands, over F(x).
    pub fn assemble(&self) -> Result<RatOp<F>> {
        match self {
            FactorNode::Leaf { op, .. } => Ok(RatOp::from_diffop(op)),
            FactorNode::Product(parts) => {
                let (first, rest) = parts.split_first().ok_or(Error::EmptyInput)?;
                let mut acc = first.assemble()?;
                for p in rest {
                    acc = acc.mul(&p.assemble()?);
                }
                Ok(acc)
            }
            FactorNode::DirectSum(parts) => {
                let ops = parts.iter().map(|p| p.assemble()).collect::<Result<Vec<_>>>()?;
                lclm_all(&ops)
            }
        }
    }

    /// True when the tree reproduces `root` up to a left rational factor.
    pub fn verify(&self, root: &DiffOp<F>) -> Result<bool> {
        let a = self.assemble()?.to_diffop();
        if a.order() != root.order() {
            return Ok(false);
        }
        let (_, r) = right_divide(root, &a)?;
        Ok(r.is_zero())
    }

    /// Indented text, one node per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write_text(0, &mut out);
        out
    }

    fn write_text(&self, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth);
        match self {
            FactorNode::Leaf { name, op } => {
                out.push_str(&format!("{pad}leaf {name} order={} degree={}\n", op.order(), op.to_dx().degree()));
            }
            FactorNode::Product(parts) | FactorNode::DirectSum(parts) => {
                let tag = if matches!(self, FactorNode::Product(_)) { "product" } else { "dsum" };
                out.push_str(&format!("{pad}{tag}\n"));
                for p in parts {
                    p.write_text(depth + 1, out);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeModulus;
    use crate::op::{op_multiply, Basis};

    #[test]
    fn product_of_sum_round_trip() {
        let f = PrimeModulus::new(32749).unwrap();
        let d = DiffOp::from_i64s(f, Basis::Dx, &[&[0], &[1]]);
        let dx = DiffOp::from_i64s(f, Basis::Dx, &[&[-1], &[0, 1]]);
        let a = DiffOp::from_i64s(f, Basis::Dx, &[&[1, 1], &[2]]);
        let tree = FactorNode::Product(vec![
            FactorNode::leaf("A", a.clone()),
            FactorNode::DirectSum(vec![FactorNode::leaf("D", d), FactorNode::leaf("Dx", dx)]),
        ]);
        let d2 = DiffOp::derivation_power(f, Basis::Dx, 2);
        let root = op_multiply(&a, &d2).unwrap();
        assert!(tree.verify(&root).unwrap());
        assert!(!tree.verify(&op_multiply(&d2, &a).unwrap()).unwrap());
        assert_eq!(
            tree.to_text(),
            "product\n  leaf A order=1 degree=1\n  dsum\n    leaf D order=1 degree=0\n    leaf Dx order=1 degree=1\n"
        );
    }
}
