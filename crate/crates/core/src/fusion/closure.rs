//! The fusion system generated by a set of morphisms.
//!
//! Every morphism of the generated system is an isomorphism onto its image
//! followed by an inclusion, and the isomorphisms form the groupoid
//! generated by restrictions of the generators (conjugation by generators of
//! `S` included). Restricting a composite is composing restrictions, so the
//! groupoid on each order level is generated by the restricted generators
//! alone. Per connected component we keep a spanning tree from a base object
//! `b` and the vertex group `Aut(b)`; then
//! `Iso(Q, R) = t_R ∘ Aut(b) ∘ t_Q⁻¹`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use super::{FusionSystem, Morph, Realization};
use crate::error::{Error, Result};
use crate::hom::{compose_perms, invert_perm, GroupMap, LocalPerm};
use crate::limits::Limits;
use crate::subgroup::Subgroup;

struct Edge {
    from: usize,
    to: usize,
    perm: LocalPerm,
}

/// Closure of `gens` (maps between subgroups of `S`) and conjugation by `S`.
pub fn generated_closure(p: u32, s: &Subgroup, gens: &[GroupMap], limits: &Limits) -> Result<FusionSystem> {
    let fs = FusionSystem::skeleton(p, s, Realization::Generated { generators: gens.to_vec() }, limits)?;
    let g = s.parent();

    // base generators as (source id, images)
    let mut base: Vec<(usize, Vec<u32>)> = Vec::new();
    let s_id = fs.lattice.len() - 1;
    for x in s.generators() {
        base.push((s_id, s.elements().iter().map(|&y| g.conj(x, y)).collect()));
    }
    for m in gens {
        let src = fs.id(m.source())?;
        if !m.is_injective() {
            return Err(Error::Precondition(format!("generator on {} is not injective", m.source().describe())));
        }
        if !m.target().same_parent(s) || fs.id_of_elements(m.images()).is_none() {
            return Err(Error::NotContained { what: "generator image".into(), of: s.describe() });
        }
        base.push((src, m.images().to_vec()));
    }

    let lattice = &fs.lattice;
    let mut levels: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, q) in lattice.iter().enumerate() {
        levels.entry(q.order()).or_default().push(i);
    }
    let mut result: Vec<Vec<Morph>> = vec![Vec::new(); lattice.len()];
    let mut total = 0usize;
    let mut orders: Vec<usize> = levels.keys().copied().collect();
    orders.sort_unstable();
    for order in orders {
        let objects = &levels[&order];
        let mut edges: Vec<Edge> = Vec::new();
        for (src, images) in &base {
            let a = &lattice[*src];
            for &q in objects {
                let sub = &lattice[q];
                if !sub.is_subgroup_of(a) {
                    continue;
                }
                let img: Vec<u32> = sub.elements().iter().map(|&x| images[a.position(x).unwrap()]).collect();
                let to = fs.id_of_elements(&img).expect("restriction image is a subgroup of S");
                let target = &lattice[to];
                let perm = img.iter().map(|&y| target.position(y).unwrap() as u32).collect();
                edges.push(Edge { from: q, to, perm });
            }
        }
        let mut adjacency: HashMap<usize, Vec<usize>> = HashMap::new();
        for (e, edge) in edges.iter().enumerate() {
            adjacency.entry(edge.from).or_default().push(e);
            adjacency.entry(edge.to).or_default().push(e);
        }
        // spanning trees: tree[q] = iso from the component base to q
        let mut tree: HashMap<usize, LocalPerm> = HashMap::new();
        let mut base_of: HashMap<usize, usize> = HashMap::new();
        let identity: LocalPerm = (0..order as u32).collect();
        for &b in objects {
            if tree.contains_key(&b) {
                continue;
            }
            tree.insert(b, identity.clone());
            base_of.insert(b, b);
            let mut component = vec![b];
            let mut queue = VecDeque::from([b]);
            while let Some(x) = queue.pop_front() {
                for &e in adjacency.get(&x).map(Vec::as_slice).unwrap_or(&[]) {
                    let edge = &edges[e];
                    let (y, step) = if edge.from == x {
                        (edge.to, edge.perm.clone())
                    } else {
                        (edge.from, invert_perm(&edge.perm))
                    };
                    if !tree.contains_key(&y) {
                        let path = compose_perms(&step, &tree[&x]);
                        tree.insert(y, path);
                        base_of.insert(y, b);
                        component.push(y);
                        queue.push_back(y);
                    }
                }
            }
            // vertex group from Schreier generators t_to⁻¹ ∘ e ∘ t_from
            let mut group = PermGroup::new(order);
            for edge in edges.iter().filter(|e| base_of.get(&e.from) == Some(&b)) {
                let schreier =
                    compose_perms(&invert_perm(&tree[&edge.to]), &compose_perms(&edge.perm, &tree[&edge.from]));
                group.add(schreier);
            }
            component.sort_unstable();
            let count = component.len() * component.len() * group.elements.len();
            total += count;
            if total > limits.max_morphisms {
                return Err(Error::CapExceeded { cap: "generated closure morphisms", limit: limits.max_morphisms });
            }
            for &q in &component {
                let back = invert_perm(&tree[&q]);
                let mut homs = Vec::with_capacity(component.len() * group.elements.len());
                for &r in &component {
                    let target = &lattice[r];
                    for a in &group.elements {
                        let perm = compose_perms(&tree[&r], &compose_perms(a, &back));
                        let images = perm.iter().map(|&j| target.elements()[j as usize]).collect();
                        homs.push(Morph { images, img: r });
                    }
                }
                homs.sort_unstable();
                result[q] = homs;
            }
        }
    }
    for (slot, homs) in fs.homs.iter().zip(result) {
        let _ = slot.set(Arc::new(homs));
    }
    Ok(fs)
}

/// A permutation group grown one generator at a time.
struct PermGroup {
    elements: Vec<LocalPerm>,
    members: HashSet<LocalPerm>,
    gens: Vec<LocalPerm>,
}

impl PermGroup {
    fn new(degree: usize) -> PermGroup {
        let id: LocalPerm = (0..degree as u32).collect();
        PermGroup { elements: vec![id.clone()], members: HashSet::from([id]), gens: Vec::new() }
    }

    fn add(&mut self, g: LocalPerm) {
        if self.members.contains(&g) {
            return;
        }
        self.gens.push(g);
        let mut queue: VecDeque<usize> = (0..self.elements.len()).collect();
        while let Some(i) = queue.pop_front() {
            for k in 0..self.gens.len() {
                let prod = compose_perms(&self.elements[i], &self.gens[k]);
                if self.members.insert(prod.clone()) {
                    self.elements.push(prod);
                    queue.push_back(self.elements.len() - 1);
                }
            }
        }
    }
}
