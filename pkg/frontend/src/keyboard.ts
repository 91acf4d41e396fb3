/** Keyboard-first controls: verdict, pattern pick, submit, retry.
 *
 * Pattern digits are accepted only while the menu is enabled, so hotkeys
 * cannot build a label the form itself would refuse.
 */
import { SessionState, canSubmit, patternMenuEnabled } from './session.js';

export type KeyAction =
  | { kind: 'verdict'; verdict: 'Issue' | 'NonIssue' }
  | { kind: 'pattern'; index: number }
  | { kind: 'submit' }
  | { kind: 'retry' };

export const KEY_HELP: ReadonlyArray<[string, string]> = [
  ['i', 'mark as issue'],
  ['n', 'mark as non-issue'],
  ['1-9', 'pick a pattern (after n)'],
  ['Enter', 'submit'],
  ['r', 'retry after a network failure'],
];

export function keyToAction(key: string, state: SessionState): KeyAction | null {
  if (state.phase !== 'labeling') return null;
  switch (key) {
    case 'i':
    case 'I':
      return { kind: 'verdict', verdict: 'Issue' };
    case 'n':
    case 'N':
      return { kind: 'verdict', verdict: 'NonIssue' };
    case 'Enter':
      return canSubmit(state) ? { kind: 'submit' } : null;
    case 'r':
    case 'R':
      return state.needsRetry ? { kind: 'retry' } : null;
    default: {
      if (/^[1-9]$/.test(key) && patternMenuEnabled(state)) {
        const index = Number(key) - 1;
        if (index < state.patterns.length) return { kind: 'pattern', index };
      }
      return null;
    }
  }
}
