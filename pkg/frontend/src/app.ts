/**
 * Expert review application.
 *
 * Three screens: pick or upload a context, describe the candidate object,
 * then the question review loop. All state that matters lives on the
 * server; every render starts from the latest server view, so reloading
 * mid-session reproduces the identical screen.
 */

import { ApiError, Client } from './api.js';
import type { ContextDetail, SessionView } from './api.js';
import { chipList, el, HAND_CHECK_BADGE, questionCard } from './view.js';

export class App {
  private context: ContextDetail | null = null;
  private session: SessionView | null = null;
  private rebaseNeeded = false;
  private errorText = '';
  private pending: Promise<void> = Promise.resolve();

  constructor(
    private root: HTMLElement,
    private client: Client,
  ) {}

  /** Queue an async action; errors land in the error box, not the console. */
  private run(action: () => Promise<void>): void {
    this.pending = this.pending.then(async () => {
      try {
        this.errorText = '';
        await action();
      } catch (err) {
        this.errorText = err instanceof Error ? err.message : String(err);
        this.render();
      }
    });
  }

  /** Resolves once every queued action has finished (used by tests). */
  settle(): Promise<void> {
    return this.pending;
  }

  async init(): Promise<void> {
    await this.renderContextScreen();
  }

  /** Rebuild the view of an existing session, e.g. after a page reload. */
  async resumeSession(sessionId: string): Promise<void> {
    this.session = await this.client.getSession(sessionId);
    this.context = await this.client.getContext(this.session.context_id);
    this.render();
  }

  // -- context screen ------------------------------------------------------

  private async renderContextScreen(): Promise<void> {
    const contexts = await this.client.listContexts();
    const textarea = el('textarea', {
      id: 'context-text',
      rows: '12',
      placeholder: 'Paste a .cxt table here',
    }) as HTMLTextAreaElement;
    const upload = el('button', { id: 'upload-btn', type: 'button' }, 'Upload context');
    upload.addEventListener('click', () =>
      this.run(async () => {
        const created = await this.client.createContext('cxt', textarea.value);
        await this.chooseContext(created.id);
      }),
    );
    const list = el('ul', { id: 'context-list' });
    for (const ctx of contexts) {
      const pick = el(
        'button',
        { type: 'button', 'data-context': ctx.id },
        `${ctx.id} (v${ctx.version}, ${ctx.objects} objects)`,
      );
      pick.addEventListener('click', () => this.run(() => this.chooseContext(ctx.id)));
      list.append(el('li', {}, pick));
    }
    this.replace(
      el('section', { id: 'context-screen' },
        el('h2', {}, 'Context'),
        this.errorBox(),
        textarea,
        upload,
        el('h3', {}, 'Or continue with a stored one'),
        list,
      ),
    );
  }

  private async chooseContext(id: string): Promise<void> {
    this.context = await this.client.getContext(id);
    this.renderCandidateScreen();
  }

  // -- candidate screen ----------------------------------------------------

  private renderCandidateScreen(): void {
    const ctx = this.context;
    if (!ctx) throw new Error('no context chosen');
    const name = el('input', {
      id: 'candidate-name',
      placeholder: 'Object name',
    }) as HTMLInputElement;
    const boxes = ctx.attribute_names.map((attr) => {
      const box = el('input', {
        type: 'checkbox',
        class: 'attr-box',
        value: attr,
      }) as HTMLInputElement;
      return { attr, box };
    });
    const method = el('select', { id: 'method' },
      el('option', { value: 'closure' }, 'closure'),
      el('option', { value: 'base' }, 'base'),
    ) as HTMLSelectElement;
    const complement = el('input', {
      type: 'checkbox',
      id: 'complement',
    }) as HTMLInputElement;
    const open = el('button', { id: 'open-btn', type: 'button' }, 'Review object');
    open.addEventListener('click', () =>
      this.run(async () => {
        this.session = await this.client.openSession(ctx.id, {
          name: name.value,
          attributes: boxes.filter((b) => b.box.checked).map((b) => b.attr),
          mode: method.value,
          complement: complement.checked,
        });
        this.render();
      }),
    );
    this.replace(
      el('section', { id: 'candidate-screen' },
        el('h2', {}, `New object for ${ctx.id}`),
        this.errorBox(),
        name,
        el('fieldset', { id: 'attributes' },
          el('legend', {}, 'Attributes'),
          ...boxes.map(({ attr, box }) => el('label', { class: 'attr' }, box, attr)),
        ),
        el('label', {}, 'Method ', method),
        el('label', {}, complement, ' also question absences'),
        open,
      ),
    );
  }

  // -- review screen -------------------------------------------------------

  private render(): void {
    const session = this.session;
    if (!session) return;
    const handlers = {
      onAnswer: (questionId: string, verdict: 'accept' | 'reject') =>
        this.run(async () => {
          this.session = await this.client.answer(session.id, questionId, verdict);
          this.render();
        }),
    };

    const questions = el('section', { id: 'questions' },
      ...session.questions.map((q) => questionCard(q, false, handlers)),
    );
    const screen = el('section', { id: 'session-screen', 'data-session': session.id },
      el('h2', {}, session.candidate.name),
      this.errorBox(),
      el('div', { id: 'status', 'data-state': session.state },
        `${session.state} (round ${session.round}, ${session.mode} method)`),
      el('section', { id: 'candidate-chips' }, chipList(session.candidate.attributes)),
      questions,
    );
    if (session.hand_checks.length > 0) {
      screen.append(
        el('section', { id: 'hand-checks' },
          el('h3', {}, `${HAND_CHECK_BADGE}:`),
          ...session.hand_checks.map((q) => questionCard(q, true, handlers)),
        ),
      );
    }

    const commit = el('button', { id: 'commit-btn', type: 'button' }, 'Commit') as HTMLButtonElement;
    commit.disabled = session.state !== 'clean';
    commit.addEventListener('click', () =>
      this.run(async () => {
        try {
          const result = await this.client.commit(session.id);
          this.rebaseNeeded = false;
          this.renderCommitted(result.context_id, result.version, result.objects);
        } catch (err) {
          if (err instanceof ApiError && err.rebaseRequired) {
            this.rebaseNeeded = true;
            this.render();
            return;
          }
          throw err;
        }
      }),
    );
    screen.append(el('div', { class: 'commit-row' }, commit));

    if (this.rebaseNeeded) {
      const rebase = el('button', { id: 'rebase-btn', type: 'button' }, 'Rebase onto newest version');
      rebase.addEventListener('click', () =>
        this.run(async () => {
          this.session = await this.client.rebase(session.id);
          this.rebaseNeeded = false;
          this.render();
        }),
      );
      screen.append(
        el('div', { id: 'rebase-banner', role: 'alert' },
          'The table changed under this session; rebase to continue. ',
          rebase,
        ),
      );
    }
    this.replace(screen);
  }

  private renderCommitted(contextId: string, version: number, objects: number): void {
    this.replace(
      el('section', { id: 'committed' },
        el('h2', {}, 'Committed'),
        el('p', { id: 'commit-info', 'data-context': contextId },
          `Version ${version} now has ${objects} objects (context ${contextId}).`),
      ),
    );
  }

  // -- shared bits -----------------------------------------------------------

  private errorBox(): HTMLElement {
    return el('div', { id: 'error', role: 'alert' }, this.errorText);
  }

  private replace(screen: HTMLElement): void {
    this.root.replaceChildren(screen);
  }
}
