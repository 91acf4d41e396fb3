/** DOM wiring: labeling pane + review dashboard against a running service. */
import { ApiClient } from './api.js';
import { ablationView, distributionView } from './dashboard.js';
import { keyToAction } from './keyboard.js';
import { renderAblation, renderDistribution, renderSession } from './render.js';
import { LabelingSession } from './session.js';

const params = new URLSearchParams(window.location.search);
const baseUrl = params.get('api') ?? 'http://127.0.0.1:8437';
const labeler = params.get('labeler') ?? 'ui';

const api = new ApiClient(baseUrl);
const labelingPane = document.getElementById('labeling')!;
const distributionPane = document.getElementById('distribution')!;
const ablationPane = document.getElementById('ablation')!;

const session = new LabelingSession(api, labeler, 'RoundRobinByProject', (state) => {
  labelingPane.innerHTML = renderSession(state);
  bindButtons();
});

function bindButtons(): void {
  labelingPane.querySelectorAll<HTMLButtonElement>('button[data-verdict]').forEach((button) => {
    button.addEventListener('click', () =>
      session.selectVerdict(button.dataset.verdict as 'Issue' | 'NonIssue'),
    );
  });
  labelingPane.querySelectorAll<HTMLButtonElement>('button[data-pattern]').forEach((button) => {
    button.addEventListener('click', () => session.selectPattern(button.dataset.pattern!));
  });
  const submit = labelingPane.querySelector<HTMLButtonElement>('#submit');
  submit?.addEventListener('click', () => {
    void session.submit().then(refreshDashboard);
  });
}

document.addEventListener('keydown', (event) => {
  if (event.target instanceof HTMLInputElement || event.target instanceof HTMLTextAreaElement) {
    return;
  }
  const action = keyToAction(event.key, session.state);
  if (!action) return;
  event.preventDefault();
  switch (action.kind) {
    case 'verdict':
      session.selectVerdict(action.verdict);
      break;
    case 'pattern':
      session.selectPatternByIndex(action.index);
      break;
    case 'submit':
      void session.submit().then(refreshDashboard);
      break;
    case 'retry':
      void session.retry().then(refreshDashboard);
      break;
  }
});

async function refreshDashboard(): Promise<void> {
  try {
    distributionPane.innerHTML = renderDistribution(distributionView(await api.distribution()));
  } catch {
    distributionPane.innerHTML = '<p class="muted">Distribution unavailable.</p>';
  }
  try {
    ablationPane.innerHTML = renderAblation(ablationView(await api.ablation()));
  } catch {
    ablationPane.innerHTML = '<p class="muted">Evaluation unavailable.</p>';
  }
}

void session.start().then(refreshDashboard);
