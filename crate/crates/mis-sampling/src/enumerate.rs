use graph_core::{Graph, VertexSet, MAX_VERTICES};

/// Enumerates every maximal independent set of `g`.
///
/// A set is maximally independent in `g` iff it is a maximal clique of the
/// complement, so this runs Bron–Kerbosch with pivoting over complement
/// neighborhoods. All recursion state lives in three `u64` masks.
///
/// Output order is canonical: size descending, then bitmask ascending. The
/// degenerate cases fall out of the recursion: the empty graph yields `[∅]`,
/// an edgeless graph yields the whole vertex set as its single mIS.
pub fn enumerate_mis(g: &Graph) -> Vec<VertexSet> {
    // Complement neighborhoods, indexed by label.
    let vm = g.vertex_set().bits();
    let mut comp = [0u64; MAX_VERTICES];
    for &l in g.labels() {
        comp[l] = vm & !g.neighbors(l).expect("label is in graph").bits() & !(1u64 << l);
    }

    let mut out = Vec::new();
    bron_kerbosch(0, vm, 0, &comp, &mut out);
    out.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    out
}

/// Classic pivoting recursion: `r` is the clique under construction (in the
/// complement), `p` the candidates, `x` the excluded set. The pivot is the
/// member of `p ∪ x` with the most complement-neighbors inside `p`, which
/// minimizes the branch set `p \ N(pivot)`.
fn bron_kerbosch(r: u64, mut p: u64, mut x: u64, comp: &[u64; MAX_VERTICES], out: &mut Vec<VertexSet>) {
    if p == 0 && x == 0 {
        out.push(VertexSet::from_bits(r));
        return;
    }
    let pivot = iter_bits(p | x)
        .max_by_key(|&u| (comp[u] & p).count_ones())
        .expect("p ∪ x is non-empty");
    // The branch set is fixed up front; p and x evolve as branches complete.
    for v in iter_bits(p & !comp[pivot]) {
        let bit = 1u64 << v;
        bron_kerbosch(r | bit, p & comp[v], x & comp[v], comp, out);
        p &= !bit;
        x |= bit;
    }
}

fn iter_bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut bits = mask;
    std::iter::from_fn(move || {
        if bits == 0 {
            None
        } else {
            let l = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(l)
        }
    })
}
