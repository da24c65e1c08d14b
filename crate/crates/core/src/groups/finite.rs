use std::collections::VecDeque;

use serde_json::Value;

use super::GroupError;

/// Finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupTable {
    n: usize,
    product: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    names: Vec<String>,
}

impl FiniteGroupTable {
    pub fn new(table: Vec<Vec<usize>>, names: Vec<String>) -> Result<Self, GroupError> {
        let n = table.len();
        let bad = |at: String, msg: &str| GroupError::Table { at, msg: msg.to_string() };
        if n == 0 {
            return Err(bad("table".into(), "group must have at least one element"));
        }
        if names.len() != n {
            return Err(bad("names".into(), &format!("expected {n} names, found {}", names.len())));
        }
        for (i, nm) in names.iter().enumerate() {
            if nm.is_empty() || nm.chars().any(char::is_whitespace) || nm == "$" {
                return Err(bad(format!("names[{i}]"), "invalid element name"));
            }
            if names[..i].contains(nm) {
                return Err(bad(format!("names[{i}]"), "duplicate element name"));
            }
        }
        let mut product = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(bad(format!("table[{i}]"), &format!("row has {} entries, expected {n}", row.len())));
            }
            for (j, &x) in row.iter().enumerate() {
                if x >= n {
                    return Err(bad(format!("table[{i}][{j}]"), "entry out of range"));
                }
                product.push(x);
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| product[e * n + x] == x && product[x * n + e] == x))
            .ok_or_else(|| bad("table".into(), "no identity element"))?;
        let mut inverse = vec![usize::MAX; n];
        for x in 0..n {
            let y = (0..n)
                .find(|&y| product[x * n + y] == identity)
                .ok_or_else(|| bad(format!("table[{x}]"), "element has no inverse"))?;
            if product[y * n + x] != identity {
                return Err(bad(format!("table[{x}]"), "left and right inverses differ"));
            }
            inverse[x] = y;
        }
        let g = Self { n, product, identity, inverse, names };
        g.check_associative()?;
        Ok(g)
    }

    fn check_associative(&self) -> Result<(), GroupError> {
        let n = self.n;
        // exhaustive up to 64 elements, otherwise a fixed stride sample
        let third: Vec<usize> = if n <= 64 { (0..n).collect() } else { (0..n).step_by(n / 32).collect() };
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for &c in &third {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(GroupError::Table {
                            at: "table".into(),
                            msg: format!(
                                "not associative: ({} {}) {} differs",
                                self.names[a], self.names[b], self.names[c]
                            ),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// `Z/n` with elements `e, a, a2, ..., a{n-1}`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let names = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "a".to_string(),
                _ => format!("a{k}"),
            })
            .collect();
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Self::new(table, names).expect("cyclic group")
    }

    /// `S3` as `e, t1, t2, t3, r1, r2`: transpositions then rotations.
    pub fn symmetric3() -> Self {
        let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("closed");
        let table = (0..6)
            .map(|i| (0..6).map(|j| idx([0, 1, 2].map(|x| perms[j][perms[i][x]]))).collect())
            .collect();
        let names = ["e", "t1", "t2", "t3", "r1", "r2"].map(String::from).to_vec();
        Self::new(table, names).expect("S3")
    }

    /// Klein four-group `e, x, y, xy`.
    pub fn klein4() -> Self {
        let table = (0..4).map(|i| (0..4).map(|j| i ^ j).collect()).collect();
        Self::new(table, ["e", "x", "y", "xy"].map(String::from).to_vec()).expect("V4")
    }

    /// Built-in by name: `Z<n>`, `S3`, `V4` (also `Klein4`).
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "S3" => Some(Self::symmetric3()),
            "V4" | "Klein4" => Some(Self::klein4()),
            _ => {
                let n: usize = name.strip_prefix('Z')?.parse().ok()?;
                (1..=4096).contains(&n).then(|| Self::cyclic(n))
            }
        }
    }

    /// Parse `{"order": n, "table": [[..]], "names": [..]}`.
    pub fn from_json(v: &Value) -> Result<Self, GroupError> {
        let bad = |at: &str, msg: &str| GroupError::Table { at: at.to_string(), msg: msg.to_string() };
        let obj = v.as_object().ok_or_else(|| bad("$", "group table must be an object"))?;
        let order = obj
            .get("order")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("order", "missing or not a nonnegative integer"))? as usize;
        let rows = obj.get("table").and_then(Value::as_array).ok_or_else(|| bad("table", "missing or not an array"))?;
        if rows.len() != order {
            return Err(bad("table", &format!("has {} rows but order is {order}", rows.len())));
        }
        let mut table = Vec::with_capacity(order);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_array().ok_or_else(|| bad(&format!("table[{i}]"), "row is not an array"))?;
            let mut row = Vec::with_capacity(r.len());
            for (j, x) in r.iter().enumerate() {
                let x = x.as_u64().ok_or_else(|| bad(&format!("table[{i}][{j}]"), "entry is not a nonnegative integer"))?;
                row.push(x as usize);
            }
            table.push(row);
        }
        let names = match obj.get("names") {
            None => (0..order).map(|k| format!("g{k}")).collect(),
            Some(ns) => {
                let ns = ns.as_array().ok_or_else(|| bad("names", "not an array"))?;
                ns.iter()
                    .enumerate()
                    .map(|(i, s)| s.as_str().map(String::from).ok_or_else(|| bad(&format!("names[{i}]"), "not a string")))
                    .collect::<Result<Vec<_>, _>>()?
            }
        };
        Self::new(table, names)
    }

    pub fn to_json(&self) -> Value {
        let table: Vec<Vec<usize>> = (0..self.n).map(|i| self.product[i * self.n..(i + 1) * self.n].to_vec()).collect();
        serde_json::json!({ "order": self.n, "table": table, "names": self.names })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.product[a * self.n + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn conjugate(&self, g: usize, by: usize) -> usize {
        self.mul(self.mul(self.inv(by), g), by)
    }

    /// Conjugacy classes, each sorted, listed by least element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for g in 0..self.n {
            if class_of[g] != usize::MAX {
                continue;
            }
            let mut cls: Vec<usize> = (0..self.n).map(|h| self.conjugate(g, h)).collect();
            cls.sort_unstable();
            cls.dedup();
            for &x in &cls {
                class_of[x] = out.len();
            }
            out.push(cls);
        }
        out
    }

    /// Index of the class containing each element.
    pub fn class_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.n];
        for (c, cls) in self.conjugacy_classes().iter().enumerate() {
            for &g in cls {
                idx[g] = c;
            }
        }
        idx
    }

    /// Check an inverse-closed, identity-free generating set.
    pub fn validate_gens(&self, gens: &[usize]) -> Result<(), GroupError> {
        for (i, &g) in gens.iter().enumerate() {
            if g >= self.n {
                return Err(GroupError::Gens(format!("generator {i} out of range")));
            }
            if g == self.identity {
                return Err(GroupError::Gens("generating set contains the identity".into()));
            }
            if gens[..i].contains(&g) {
                return Err(GroupError::Gens(format!("generator {} repeated", self.names[g])));
            }
            if !gens.contains(&self.inv(g)) {
                return Err(GroupError::Gens(format!("inverse of {} missing", self.names[g])));
            }
        }
        let dist = self.word_lengths(gens);
        if let Some(g) = dist.iter().position(|&d| d == usize::MAX) {
            return Err(GroupError::Gens(format!("generating set does not reach {}", self.names[g])));
        }
        Ok(())
    }

    /// Cayley-graph distance from the identity (`usize::MAX` if unreachable).
    pub fn word_lengths(&self, gens: &[usize]) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[self.identity] = 0;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(g) = queue.pop_front() {
            for &a in gens {
                let h = self.mul(g, a);
                if dist[h] == usize::MAX {
                    dist[h] = dist[g] + 1;
                    queue.push_back(h);
                }
            }
        }
        dist
    }

    pub fn word_length(&self, g: usize, gens: &[usize]) -> Result<usize, GroupError> {
        if g >= self.n {
            return Err(GroupError::ElementOutOfRange(g));
        }
        Ok(self.word_lengths(gens)[g])
    }

    /// `|g|_c`: least length over the conjugacy class of each element.
    pub fn conj_lengths(&self, gens: &[usize]) -> Vec<usize> {
        let len = self.word_lengths(gens);
        let mut out = vec![0; self.n];
        for cls in self.conjugacy_classes() {
            let m = cls.iter().map(|&g| len[g]).min().unwrap_or(0);
            for g in cls {
                out[g] = m;
            }
        }
        out
    }

    pub fn conj_length(&self, g: usize, gens: &[usize]) -> Result<usize, GroupError> {
        if g >= self.n {
            return Err(GroupError::ElementOutOfRange(g));
        }
        Ok(self.conj_lengths(gens)[g])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_are_groups() {
        for g in [FiniteGroupTable::cyclic(5), FiniteGroupTable::symmetric3(), FiniteGroupTable::klein4()] {
            let t = g.clone();
            assert_eq!(FiniteGroupTable::from_json(&t.to_json()).unwrap(), g);
        }
        assert!(!FiniteGroupTable::symmetric3().is_abelian());
        assert!(FiniteGroupTable::builtin("Z6").unwrap().is_abelian());
    }

    #[test]
    fn class_sizes() {
        let s3 = FiniteGroupTable::symmetric3();
        let mut sizes: Vec<usize> = s3.conjugacy_classes().iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(FiniteGroupTable::cyclic(2).conjugacy_classes().len(), 2);
        assert_eq!(FiniteGroupTable::klein4().conjugacy_classes().len(), 4);
    }

    #[test]
    fn lengths() {
        let z4 = FiniteGroupTable::cyclic(4);
        let gens = [1, 3];
        assert_eq!(z4.word_length(2, &gens).unwrap(), 2);
        assert_eq!(z4.conj_length(2, &gens).unwrap(), 2);
        assert_eq!(z4.word_length(0, &gens).unwrap(), 0);
        let s3 = FiniteGroupTable::symmetric3();
        let all: Vec<usize> = (1..6).collect();
        assert!((1..6).all(|g| s3.word_length(g, &all).unwrap() == 1 && s3.conj_length(g, &all).unwrap() == 1));
        assert!(z4.word_length(9, &gens).is_err());
    }

    #[test]
    fn table_errors_name_positions() {
        let v = serde_json::json!({"order": 2, "table": [[0, 1], [1, 7]]});
        let err = FiniteGroupTable::from_json(&v).unwrap_err().to_string();
        assert!(err.contains("table[1][1]"), "{err}");
        let v = serde_json::json!({"order": 3, "table": [[0, 1, 2], [1, 0, 2], [2, 2, 0]]});
        assert!(FiniteGroupTable::from_json(&v).is_err());
    }

    #[test]
    fn generating_set_validation() {
        let z4 = FiniteGroupTable::cyclic(4);
        assert!(z4.validate_gens(&[1, 3]).is_ok());
        assert!(z4.validate_gens(&[1]).is_err());
        assert!(z4.validate_gens(&[2]).is_err());
        assert!(z4.validate_gens(&[0, 1, 3]).is_err());
    }
}
