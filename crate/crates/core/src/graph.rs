//! Strongly connected components.

/// Component id per vertex, numbered by least member.
pub(crate) fn scc(adj: &[Vec<usize>]) -> Vec<usize> {
    const NONE: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![NONE; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comp = vec![NONE; n];
    let mut next = 0;
    let mut ncomp = 0;
    for s in 0..n {
        if index[s] != NONE {
            continue;
        }
        index[s] = next;
        low[s] = next;
        next += 1;
        stack.push(s);
        on_stack[s] = true;
        let mut call = vec![(s, 0usize)];
        while let Some(&(v, i)) = call.last() {
            if i < adj[v].len() {
                call.last_mut().unwrap().1 += 1;
                let w = adj[v][i];
                if index[w] == NONE {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(u, _)) = call.last() {
                    low[u] = low[u].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp[w] = ncomp;
                        if w == v {
                            break;
                        }
                    }
                    ncomp += 1;
                }
            }
        }
    }
    let mut relabel = vec![NONE; ncomp];
    let mut k = 0;
    for c in comp.iter_mut() {
        if relabel[*c] == NONE {
            relabel[*c] = k;
            k += 1;
        }
        *c = relabel[*c];
    }
    comp
}
