use super::set::StateSet;
use super::TransitionSystem;

/// Tarjan's algorithm over the implicit transition graph, keeping only the
/// components without outgoing edges. Members of each component are sorted.
pub(super) fn bottom_components(ts: &TransitionSystem) -> Vec<Vec<u32>> {
    let size = 1usize << ts.width();
    // 0 marks an unvisited state; otherwise the discovery index plus one.
    let mut index = vec![0u32; size];
    let mut low = vec![0u32; size];
    let mut on_stack = StateSet::empty(ts.width());
    let mut stack: Vec<u32> = Vec::new();
    let mut frames: Vec<(u32, u32)> = Vec::new();
    let mut counter = 0u32;
    let mut bottoms = Vec::new();

    for root in ts.domain() {
        if index[root as usize] != 0 {
            continue;
        }
        counter += 1;
        index[root as usize] = counter;
        low[root as usize] = counter;
        stack.push(root);
        on_stack.insert_bits(root);
        frames.push((root, ts.unstable(root)));

        while let Some(frame) = frames.last_mut() {
            let v = frame.0;
            if frame.1 != 0 {
                let m = frame.1 & frame.1.wrapping_neg();
                frame.1 &= frame.1 - 1;
                let w = v ^ m;
                if index[w as usize] == 0 {
                    counter += 1;
                    index[w as usize] = counter;
                    low[w as usize] = counter;
                    stack.push(w);
                    on_stack.insert_bits(w);
                    frames.push((w, ts.unstable(w)));
                } else if on_stack.contains_bits(w) {
                    low[v as usize] = low[v as usize].min(index[w as usize]);
                }
                continue;
            }
            frames.pop();
            if let Some(&(parent, _)) = frames.last() {
                low[parent as usize] = low[parent as usize].min(low[v as usize]);
            }
            if low[v as usize] != index[v as usize] {
                continue;
            }
            let start = stack
                .iter()
                .rposition(|&x| x == v)
                .expect("root is on the stack");
            // Successors of a component member are either in the component
            // (still on the stack) or in an already finished component.
            let bottom = stack[start..]
                .iter()
                .all(|&u| ts.post(u).all(|w| on_stack.contains_bits(w)));
            let mut members: Vec<u32> = stack.drain(start..).collect();
            for &u in &members {
                on_stack.remove_bits(u);
            }
            if bottom {
                members.sort_unstable();
                bottoms.push(members);
            }
        }
    }
    bottoms
}
