//! Canonical ordering of variable names.
//!
//! Every polynomial keeps its variables sorted by [`var_key`], so embedding two
//! polynomials into a common ring is a merge and the graded-lex term order is
//! the same no matter how the operands were built.

use std::cmp::Ordering;
use std::sync::Arc;

/// Sort key: base coordinates first, then product-block coordinates, Riccati
/// slopes, fiber differentials, and finally anything else alphabetically.
fn var_key(name: &str) -> (u8, u64, u8, &str) {
    match name {
        "x" => return (0, 0, 0, ""),
        "y" => return (0, 0, 1, ""),
        "u" => return (0, 1, 0, ""),
        "w" => return (0, 1, 1, ""),
        "t" => return (2, 0, 0, ""),
        "dx" => return (3, 0, 0, ""),
        "dy" => return (3, 0, 1, ""),
        "du" => return (3, 1, 0, ""),
        "dw" => return (3, 1, 1, ""),
        _ => {}
    }
    let indexed = |prefix: &str| -> Option<u64> {
        let rest = name.strip_prefix(prefix)?;
        if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) && rest.len() < 18 {
            rest.parse().ok()
        } else {
            None
        }
    };
    if let Some(k) = indexed("x") {
        return (1, k, 0, "");
    }
    if let Some(k) = indexed("y") {
        return (1, k, 1, "");
    }
    if let Some(k) = indexed("t") {
        return (2, k, 0, "");
    }
    (4, 0, 0, name)
}

pub fn cmp_vars(a: &str, b: &str) -> Ordering {
    var_key(a).cmp(&var_key(b))
}

/// A sorted, deduplicated list of variable names shared between polynomials.
pub type VarList = Arc<[String]>;

pub fn var_list<S: AsRef<str>>(names: &[S]) -> VarList {
    let mut v: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
    v.sort_by(|a, b| cmp_vars(a, b));
    v.dedup();
    v.into()
}

/// Sorted union of two variable lists.
pub fn merge(a: &VarList, b: &VarList) -> VarList {
    if Arc::ptr_eq(a, b) || a[..] == b[..] {
        return a.clone();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match cmp_vars(&a[i], &b[j]) {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                out.push(a[i].clone());
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(b[j..].iter().cloned());
    out.into()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order() {
        let v = var_list(&["dy", "t1", "y2", "x", "a", "dx", "x1", "y", "x10", "x2"]);
        let names: Vec<&str> = v.iter().map(|s| s.as_str()).collect();
        assert_eq!(
            names,
            ["x", "y", "x1", "x2", "y2", "x10", "t1", "dx", "dy", "a"]
        );
    }

    #[test]
    fn merge_keeps_order() {
        let a = var_list(&["x", "dx"]);
        let b = var_list(&["y", "dy", "x"]);
        let m = merge(&a, &b);
        assert_eq!(&m[..], &["x", "y", "dx", "dy"].map(String::from)[..]);
    }
}
