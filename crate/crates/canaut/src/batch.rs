//! Line-oriented batch input processed on a pool of scoped threads.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

/// Non-blank lines that are not `#` comments, trimmed.
pub fn equations(text: &str) -> Vec<&str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

/// Applies `f` to every item on up to `jobs` threads; results come back
/// in input order.
pub fn map_ordered<T, R, F>(items: &[T], jobs: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    let jobs = jobs.clamp(1, items.len().max(1));
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<R>>> = Mutex::new((0..items.len()).map(|_| None).collect());
    thread::scope(|s| {
        for _ in 0..jobs {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(item) = items.get(i) else { break };
                let r = f(item);
                slots.lock().expect("worker panicked")[i] = Some(r);
            });
        }
    });
    slots
        .into_inner()
        .expect("worker panicked")
        .into_iter()
        .map(|r| r.expect("every slot is filled"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_blanks_skipped() {
        let text = "# header\n\nw^2 - z^5 - x^10 - y^10\n   \n  # indented comment\nx\n";
        assert_eq!(equations(text), ["w^2 - z^5 - x^10 - y^10", "x"]);
    }

    #[test]
    fn order_is_preserved() {
        let items: Vec<u64> = (0..200).collect();
        let out = map_ordered(&items, 7, |&n| {
            std::thread::sleep(std::time::Duration::from_micros((200 - n) * 10));
            n * n
        });
        assert_eq!(out, items.iter().map(|n| n * n).collect::<Vec<_>>());
        assert!(map_ordered(&Vec::<u8>::new(), 4, |&b| b).is_empty());
    }
}
