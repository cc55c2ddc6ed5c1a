/**
 * DOM builders for the question review screen.
 *
 * Pure functions from server view models to elements; no inference happens
 * here, a card shows exactly what the server sent.
 */

import type { Literal, QuestionView } from './api.js';

type Child = Node | string;

export function el(
  tag: string,
  attrs: Record<string, string> = {},
  ...children: Child[]
): HTMLElement {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  for (const child of children) {
    node.append(child);
  }
  return node;
}

/** Negated attributes render struck through with a textual "not". */
export function literalSpan(lit: Literal): HTMLElement {
  if (lit.positive) {
    return el('span', { class: 'lit' }, lit.attribute);
  }
  return el('span', { class: 'lit negative' }, 'not ', el('s', {}, lit.attribute));
}

function literalList(literals: Literal[]): Child[] {
  const parts: Child[] = [];
  literals.forEach((lit, i) => {
    if (i > 0) parts.push(', ');
    parts.push(literalSpan(lit));
  });
  return parts;
}

export function implicationLine(q: QuestionView): HTMLElement {
  return el(
    'p',
    { class: 'implication' },
    ...literalList(q.premise),
    el('span', { class: 'arrow' }, ' → '),
    ...literalList(q.conclusion),
  );
}

export const HAND_CHECK_BADGE = 'no supporting example - verify by hand';

export interface CardHandlers {
  onAnswer(questionId: string, verdict: 'accept' | 'reject'): void;
}

export function questionCard(
  q: QuestionView,
  handCheck: boolean,
  handlers: CardHandlers,
): HTMLElement {
  const card = el('article', {
    class: handCheck ? 'question-card hand-check' : 'question-card',
    'data-id': q.id,
    'data-origin': q.origin,
    'data-status': q.status,
  });
  const badges = el('div', { class: 'badges' }, el('span', { class: 'origin-badge' }, q.origin));
  if (handCheck) {
    badges.append(el('span', { class: 'hand-badge' }, HAND_CHECK_BADGE));
  }
  card.append(badges, implicationLine(q));
  if (q.support.length > 0) {
    card.append(el('p', { class: 'support' }, `Support: {${q.support.join(', ')}}`));
  }
  if (q.status === 'open') {
    const accept = el('button', { class: 'accept-btn', type: 'button' }, 'Accept');
    const reject = el('button', { class: 'reject-btn', type: 'button' }, 'Reject');
    accept.addEventListener('click', () => handlers.onAnswer(q.id, 'accept'));
    reject.addEventListener('click', () => handlers.onAnswer(q.id, 'reject'));
    card.append(el('div', { class: 'actions' }, accept, reject));
  } else {
    card.append(el('p', { class: 'verdict' }, q.status));
  }
  return card;
}

export function chipList(attributes: string[]): HTMLElement {
  return el(
    'ul',
    { class: 'chips' },
    ...attributes.map((name) => el('li', { class: 'chip' }, name)),
  );
}
