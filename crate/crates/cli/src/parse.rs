//! Subsets as `3,5,6` (or `356` when n < 10), collections as `1,2;1,3;2,3`.

use hypergrass::triangulation::circuit_from_permutation;
use hypergrass::{KSubset, SortedCollection};

pub fn subset(n: usize, text: &str) -> Result<KSubset, String> {
    let text = text.trim();
    let elements: Vec<u32> = if text.contains(',') || n >= 10 {
        text.split(',')
            .map(|x| x.trim().parse::<u32>().map_err(|_| format!("bad element {x:?} in {text:?}")))
            .collect::<Result<_, _>>()?
    } else {
        text.chars()
            .map(|c| c.to_digit(10).ok_or_else(|| format!("bad element {c:?} in {text:?}")))
            .collect::<Result<_, _>>()?
    };
    KSubset::new(n, &elements).map_err(|e| e.to_string())
}

pub fn collection(n: usize, text: &str) -> Result<SortedCollection, String> {
    let members = text
        .split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| subset(n, s))
        .collect::<Result<Vec<_>, _>>()?;
    if members.is_empty() {
        return Err("empty collection".into());
    }
    SortedCollection::new(members).map_err(|e| e.to_string())
}

/// A permutation as `5,6,1,7,8,2,4,3` or `56178243`.
pub fn permutation(n: usize, text: &str) -> Result<Vec<u32>, String> {
    let text = text.trim();
    let out: Vec<u32> = if text.contains(',') {
        text.split(',').map(|x| x.trim().parse::<u32>().map_err(|_| format!("bad label {x:?}"))).collect::<Result<_, _>>()?
    } else {
        text.chars().map(|c| c.to_digit(10).ok_or_else(|| format!("bad label {c:?}"))).collect::<Result<_, _>>()?
    };
    if out.len() != n {
        return Err(format!("permutation {text:?} has {} labels, expected {n}", out.len()));
    }
    Ok(out)
}

pub fn cell(n: usize, k: Option<usize>, j: Option<&str>, omega: Option<&str>) -> Result<SortedCollection, String> {
    let c = match (j, omega) {
        (Some(j), None) => collection(n, j)?,
        (None, Some(w)) => {
            let k = k.ok_or("--omega needs --k")?;
            circuit_from_permutation(&permutation(n, w)?, k).map_err(|e| e.to_string())?.collection()
        }
        _ => return Err("give exactly one of --J and --omega".into()),
    };
    if let Some(k) = k {
        if c.k() != k {
            return Err(format!("collection members have {} elements, --k is {k}", c.k()));
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        assert_eq!(subset(8, "356").unwrap(), subset(8, "3, 5,6").unwrap());
        assert_eq!(subset(12, "10,11").unwrap().elements(), vec![10, 11]);
        assert!(subset(8, "39").is_err());
        assert_eq!(collection(4, "1,2;1,3;2,3;2,4").unwrap().len(), 4);
        assert!(collection(4, "1,2;3,4;").is_err());
        let c = cell(8, Some(3), None, Some("56178243")).unwrap();
        assert!(c.contains(&subset(8, "145").unwrap()));
        assert!(cell(8, Some(2), None, Some("56178243")).is_err());
        assert!(cell(8, None, Some("1,2"), Some("12345678")).is_err());
    }
}
