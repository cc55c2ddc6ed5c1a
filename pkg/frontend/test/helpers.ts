/** Test utilities: the bundled quadrangle table and app mounting. */

import { readFileSync } from 'node:fs';
import { dirname, join } from 'node:path';
import { fileURLToPath } from 'node:url';

import { Client } from '../src/api.js';
import { App } from '../src/app.js';
import { API_BASE } from './config.js';

const here = dirname(fileURLToPath(import.meta.url));

export const QUAD_CXT = readFileSync(
  join(here, '..', '..', 'src', 'rowguard', 'data', 'quadrangles.cxt'),
  'utf8',
);

export const CASE2_ATTRS = [
  'has equal legs',
  'has right angle',
  'all legs equal',
  'all angles equal',
];

export const CASE4_ATTRS = [
  'has equal legs',
  'has equal angles',
  'all legs equal',
  'at least 3 different legs',
];

export function newClient(): Client {
  return new Client(API_BASE);
}

export function mountApp(client = newClient()): { app: App; root: HTMLElement } {
  document.body.innerHTML = '<main id="app"></main>';
  const root = document.getElementById('app') as HTMLElement;
  return { app: new App(root, client), root };
}

/** Click a button and wait for the app's queued work to finish. */
export async function click(app: App, button: Element | null): Promise<void> {
  if (!(button instanceof HTMLElement)) {
    throw new Error('expected a button element, got ' + String(button));
  }
  button.click();
  await app.settle();
}

export function checkAttr(root: HTMLElement, attr: string): void {
  const box = [...root.querySelectorAll<HTMLInputElement>('.attr-box')].find(
    (candidate) => candidate.value === attr,
  );
  if (!box) throw new Error('no checkbox for ' + attr);
  box.checked = true;
}

export async function openSessionThroughForms(
  app: App,
  root: HTMLElement,
  name: string,
  attrs: string[],
  cxtText = QUAD_CXT,
): Promise<void> {
  await app.init();
  const textarea = root.querySelector<HTMLTextAreaElement>('#context-text');
  if (!textarea) throw new Error('context screen did not render');
  textarea.value = cxtText;
  await click(app, root.querySelector('#upload-btn'));

  const nameInput = root.querySelector<HTMLInputElement>('#candidate-name');
  if (!nameInput) throw new Error('candidate screen did not render');
  nameInput.value = name;
  for (const attr of attrs) checkAttr(root, attr);
  await click(app, root.querySelector('#open-btn'));
}

export function cardTexts(root: HTMLElement, selector: string): string[] {
  return [...root.querySelectorAll(`${selector} .implication`)].map(
    (node) => node.textContent ?? '',
  );
}

export function chips(root: HTMLElement): string[] {
  return [...root.querySelectorAll('#candidate-chips .chip')].map(
    (node) => node.textContent ?? '',
  );
}
