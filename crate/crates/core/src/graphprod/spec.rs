use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use serde_json::Value;

use crate::fsa::{Alphabet, Letter, Word};
use crate::groups::{table_from_json, FiniteGroupTable, VertexGroup};

use super::GraphProdError;

/// Image of a letter under `pi_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PiImage {
    /// Letter of `X_i`, as its local index.
    Keep(usize),
    /// Letter of a vertex not adjacent to `v_i`.
    Dollar,
    /// Letter of `C_i`.
    Erase,
}

/// Simplicial graph with vertex groups; letters globally ordered.
#[derive(Clone, Debug)]
pub struct GraphProductSpec {
    vertices: Vec<VertexGroup>,
    adj: Vec<Vec<bool>>,
    alphabet: Arc<Alphabet>,
    global: Vec<Vec<usize>>,
    local: Vec<(usize, usize)>,
}

impl GraphProductSpec {
    /// Letters are ordered by `order` when given, else vertex by vertex in
    /// local order. Letter names must be distinct across vertices.
    pub fn new(
        vertices: Vec<VertexGroup>,
        edges: &[(usize, usize)],
        order: Option<&[String]>,
    ) -> Result<Self, GraphProdError> {
        let n = vertices.len();
        let mut adj = vec![vec![false; n]; n];
        for (e, &(i, j)) in edges.iter().enumerate() {
            if i >= n || j >= n {
                return Err(GraphProdError::Spec(format!("edges[{e}]: vertex out of range")));
            }
            if i == j {
                return Err(GraphProdError::Spec(format!("edges[{e}]: loops are not allowed")));
            }
            adj[i][j] = true;
            adj[j][i] = true;
        }
        let mut owner: HashMap<String, usize> = HashMap::new();
        for (v, g) in vertices.iter().enumerate() {
            for name in g.names() {
                if let Some(prev) = owner.insert(name.clone(), v) {
                    return Err(GraphProdError::Spec(format!(
                        "letter {name:?} used by vertices {prev} and {v}"
                    )));
                }
            }
        }
        let all: Vec<String> = match order {
            Some(o) => {
                let given: BTreeSet<&String> = o.iter().collect();
                if given.len() != o.len() {
                    return Err(GraphProdError::Spec("order lists a letter twice".into()));
                }
                if let Some(bad) = o.iter().find(|x| !owner.contains_key(*x)) {
                    return Err(GraphProdError::Spec(format!("order names unknown letter {bad:?}")));
                }
                if o.len() != owner.len() {
                    let missing: Vec<&String> = owner.keys().filter(|k| !given.contains(k)).collect();
                    return Err(GraphProdError::Spec(format!("order omits letters {missing:?}")));
                }
                o.to_vec()
            }
            None => vertices.iter().flat_map(|g| g.names().iter().cloned()).collect(),
        };
        let rank: HashMap<&str, usize> = all.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let vertices: Vec<VertexGroup> = vertices
            .into_iter()
            .map(|g| g.sorted_by_key(|name| rank[name]))
            .collect();
        let mut local = vec![(0, 0); all.len()];
        let mut global = Vec::with_capacity(n);
        for (v, g) in vertices.iter().enumerate() {
            let ids: Vec<usize> = g.names().iter().map(|nm| rank[nm.as_str()]).collect();
            for (j, &id) in ids.iter().enumerate() {
                local[id] = (v, j);
            }
            global.push(ids);
        }
        let letters = (0..all.len())
            .map(|id| {
                let (v, j) = local[id];
                Letter {
                    id,
                    name: all[id].clone(),
                    vertex: Some(v),
                    inverse: Some(global[v][vertices[v].inverse(j)]),
                }
            })
            .collect();
        let alphabet = Arc::new(Alphabet::new(letters).map_err(|e| GraphProdError::Spec(e.to_string()))?);
        Ok(Self { vertices, adj, alphabet, global, local })
    }

    /// Like [`new`](Self::new), renaming colliding letter names to
    /// `name_k` (1-based vertex number) first.
    pub fn auto_named(vertices: Vec<VertexGroup>, edges: &[(usize, usize)]) -> Result<Self, GraphProdError> {
        let mut count: HashMap<String, usize> = HashMap::new();
        for g in &vertices {
            for nm in g.names() {
                *count.entry(nm.clone()).or_default() += 1;
            }
        }
        let vertices = vertices
            .into_iter()
            .enumerate()
            .map(|(v, g)| {
                let names: Vec<String> = g
                    .names()
                    .iter()
                    .map(|nm| if count[nm] > 1 { format!("{nm}_{}", v + 1) } else { nm.clone() })
                    .collect();
                g.renamed(names).map_err(|e| GraphProdError::Spec(e.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(vertices, edges, None)
    }

    /// Parse the JSON spec format:
    /// `{"vertices":[{"type":"finite","table":..,"gens":[..],"letters":[..]} |
    /// {"type":"cyclic_inf","letters":[..]} | {"type":"free","rank":r,"letters":[..]}],
    /// "edges":[[i,j],..], "order":[..]}`.
    pub fn from_json(v: &Value) -> Result<Self, GraphProdError> {
        let bad = |msg: String| GraphProdError::Spec(msg);
        let obj = v.as_object().ok_or_else(|| bad("spec must be a JSON object".into()))?;
        let verts = obj
            .get("vertices")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing array \"vertices\"".into()))?;
        let mut vertices = Vec::with_capacity(verts.len());
        let mut explicit = Vec::with_capacity(verts.len());
        for (i, vj) in verts.iter().enumerate() {
            let at = format!("vertices[{i}]");
            let (g, named) = parse_vertex(vj, &at)?;
            vertices.push(g);
            explicit.push(named);
        }
        let mut edges = Vec::new();
        if let Some(es) = obj.get("edges") {
            let es = es.as_array().ok_or_else(|| bad("\"edges\" must be an array".into()))?;
            for (e, pair) in es.iter().enumerate() {
                let p = pair
                    .as_array()
                    .filter(|p| p.len() == 2)
                    .and_then(|p| Some((p[0].as_u64()? as usize, p[1].as_u64()? as usize)))
                    .ok_or_else(|| bad(format!("edges[{e}] must be a pair of vertex indices")))?;
                edges.push(p);
            }
        }
        let order: Option<Vec<String>> = match obj.get("order") {
            None => None,
            Some(o) => Some(
                o.as_array()
                    .ok_or_else(|| bad("\"order\" must be an array".into()))?
                    .iter()
                    .enumerate()
                    .map(|(i, s)| s.as_str().map(String::from).ok_or_else(|| bad(format!("order[{i}] must be a string"))))
                    .collect::<Result<_, _>>()?,
            ),
        };
        // default names may collide; explicit ones must not
        let mut count: HashMap<String, usize> = HashMap::new();
        for g in &vertices {
            for nm in g.names() {
                *count.entry(nm.clone()).or_default() += 1;
            }
        }
        let vertices = vertices
            .into_iter()
            .enumerate()
            .map(|(v, g)| {
                if explicit[v] {
                    return Ok(g);
                }
                let names = g
                    .names()
                    .iter()
                    .map(|nm| if count[nm] > 1 { format!("{nm}_{}", v + 1) } else { nm.clone() })
                    .collect();
                g.renamed(names).map_err(|e| bad(format!("vertices[{v}]: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(vertices, &edges, order.as_deref())
    }

    pub fn to_json(&self) -> Value {
        let vertices: Vec<Value> = self
            .vertices
            .iter()
            .map(|g| match g.kind() {
                crate::groups::VertexKind::Finite(t) => serde_json::json!({
                    "type": "finite",
                    "table": t.to_json(),
                    "gens": g.gens().iter().map(|&e| t.name(e).to_string()).collect::<Vec<_>>(),
                    "letters": g.names(),
                }),
                crate::groups::VertexKind::InfiniteCyclic => serde_json::json!({
                    "type": "cyclic_inf",
                    "letters": canonical_free_names(g),
                }),
                crate::groups::VertexKind::Free { rank } => serde_json::json!({
                    "type": "free",
                    "rank": rank,
                    "letters": canonical_free_names(g),
                }),
            })
            .collect();
        let edges: Vec<[usize; 2]> = self.edges().into_iter().map(|(i, j)| [i, j]).collect();
        let order: Vec<&str> = self.alphabet.letters().iter().map(|l| l.name.as_str()).collect();
        serde_json::json!({ "vertices": vertices, "edges": edges, "order": order })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn vertices(&self) -> &[VertexGroup] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &VertexGroup {
        &self.vertices[i]
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i][j]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.vertices.len();
        (0..n).flat_map(|i| (i + 1..n).filter(move |&j| self.adj[i][j]).map(move |j| (i, j))).collect()
    }

    pub fn is_complete(&self) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| (0..n).all(|j| i == j || self.adj[i][j]))
    }

    pub fn is_edgeless(&self) -> bool {
        self.adj.iter().all(|r| r.iter().all(|&b| !b))
    }

    /// Vertex owning a global letter.
    pub fn vertex_of(&self, a: usize) -> usize {
        self.local[a].0
    }

    /// Local index of a global letter within its vertex.
    pub fn local_index(&self, a: usize) -> usize {
        self.local[a].1
    }

    pub fn global_id(&self, v: usize, j: usize) -> usize {
        self.global[v][j]
    }

    /// Global ids of the letters of vertex `v`, ascending.
    pub fn vertex_letters(&self, v: usize) -> &[usize] {
        &self.global[v]
    }

    /// `C(w)`: letters commuting with every letter of `w`; `C(lambda) = X`.
    pub fn centralizing_set(&self, w: &[usize]) -> Vec<usize> {
        let verts: BTreeSet<usize> = w.iter().map(|&a| self.vertex_of(a)).collect();
        (0..self.alphabet.len())
            .filter(|&b| verts.iter().all(|&v| self.adj[v][self.vertex_of(b)]))
            .collect()
    }

    pub fn pi_images(&self, i: usize) -> Vec<PiImage> {
        (0..self.alphabet.len())
            .map(|a| {
                let (v, j) = self.local[a];
                if v == i {
                    PiImage::Keep(j)
                } else if self.adj[i][v] {
                    PiImage::Erase
                } else {
                    PiImage::Dollar
                }
            })
            .collect()
    }

    /// `pi_i` as images over the codomain alphabet (local letters then `$`).
    pub fn pi_words(&self, i: usize) -> Vec<Word> {
        let dollar = self.vertices[i].num_letters();
        self.pi_images(i)
            .into_iter()
            .map(|p| match p {
                PiImage::Keep(j) => vec![j],
                PiImage::Dollar => vec![dollar],
                PiImage::Erase => Vec::new(),
            })
            .collect()
    }

    pub fn project(&self, i: usize, w: &[usize]) -> Word {
        let images = self.pi_words(i);
        w.iter().flat_map(|&a| images[a].iter().copied()).collect()
    }

    pub fn local_alphabet(&self, i: usize) -> Arc<Alphabet> {
        Arc::new(self.vertices[i].local_alphabet(i))
    }

    /// `X_i` followed by `$`.
    pub fn codomain_alphabet(&self, i: usize) -> Arc<Alphabet> {
        Arc::new(self.vertices[i].local_alphabet(i).with_sentinel())
    }

    /// Parse whitespace-separated letter names.
    pub fn parse_word(&self, s: &str) -> Result<Word, GraphProdError> {
        self.alphabet.parse_word(s).map_err(|e| GraphProdError::Spec(e.to_string()))
    }
}

fn canonical_free_names(g: &VertexGroup) -> Vec<String> {
    // listed as x1, x1^-1, x2, ... regardless of the global order
    let mut pairs: Vec<(usize, bool, String)> = g
        .letters()
        .iter()
        .zip(g.names())
        .map(|(l, n)| match l {
            crate::groups::LocalLetter::Gen { index, inverse } => (*index, *inverse, n.clone()),
            crate::groups::LocalLetter::Elem(_) => unreachable!(),
        })
        .collect();
    pairs.sort();
    pairs.into_iter().map(|p| p.2).collect()
}

fn parse_vertex(v: &Value, at: &str) -> Result<(VertexGroup, bool), GraphProdError> {
    let bad = |msg: String| GraphProdError::Spec(format!("{at}: {msg}"));
    let obj = v.as_object().ok_or_else(|| bad("vertex must be an object".into()))?;
    let ty = obj.get("type").and_then(Value::as_str).ok_or_else(|| bad("missing \"type\"".into()))?;
    let letters: Option<Vec<String>> = match obj.get("letters") {
        None => None,
        Some(l) => Some(
            l.as_array()
                .ok_or_else(|| bad("\"letters\" must be an array".into()))?
                .iter()
                .map(|s| s.as_str().map(String::from).ok_or_else(|| bad("letter names must be strings".into())))
                .collect::<Result<_, _>>()?,
        ),
    };
    let named = letters.is_some();
    let g = match ty {
        "finite" => {
            let tv = obj.get("table").ok_or_else(|| bad("missing \"table\"".into()))?;
            let table: FiniteGroupTable = table_from_json(tv).map_err(|e| bad(e.at("table").to_string()))?;
            let gens: Vec<usize> = match obj.get("gens") {
                None => (0..table.order()).filter(|&g| g != table.identity()).collect(),
                Some(gs) => gs
                    .as_array()
                    .ok_or_else(|| bad("\"gens\" must be an array".into()))?
                    .iter()
                    .enumerate()
                    .map(|(k, x)| match x {
                        Value::String(s) => table.element(s),
                        Value::Number(n) => n.as_u64().map(|n| n as usize).filter(|&n| n < table.order()),
                        _ => None,
                    }
                    .ok_or_else(|| bad(format!("gens[{k}] is not an element of the table"))))
                    .collect::<Result<_, _>>()?,
            };
            VertexGroup::finite(Arc::new(table), &gens, letters).map_err(|e| bad(e.to_string()))?
        }
        "cyclic_inf" => {
            let names = match letters {
                None => None,
                Some(l) if l.len() == 2 => Some([l[0].clone(), l[1].clone()]),
                Some(_) => return Err(bad("\"letters\" for cyclic_inf must name x and x^-1".into())),
            };
            VertexGroup::infinite_cyclic(names).map_err(|e| bad(e.to_string()))?
        }
        "free" => {
            let rank = obj
                .get("rank")
                .and_then(Value::as_u64)
                .ok_or_else(|| bad("free vertex needs a positive \"rank\"".into()))? as usize;
            VertexGroup::free(rank, letters).map_err(|e| bad(e.to_string()))?
        }
        other => return Err(bad(format!("unknown vertex type {other:?}"))),
    };
    Ok((g, named))
}
