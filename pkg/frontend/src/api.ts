/**
 * Typed client for the rowguard JSON API.
 *
 * Every method maps to one endpoint; error responses become ApiError with
 * the server's detail string and, for stale commits, the rebase flag.
 */

export interface Literal {
  attribute: string;
  positive: boolean;
}

export interface QuestionView {
  id: string;
  origin: string;
  space: string;
  status: string;
  premise: Literal[];
  conclusion: Literal[];
  support: string[];
  text: string;
}

export interface SessionView {
  id: string;
  context_id: string;
  state: string;
  mode: string;
  use_complement: boolean;
  round: number;
  candidate: { name: string; attributes: string[] };
  questions: QuestionView[];
  hand_checks: QuestionView[];
}

export interface ContextSummary {
  id: string;
  version: number;
  parent: string | null;
  child: string | null;
  objects: number;
  attributes: number;
}

export interface ContextDetail extends ContextSummary {
  object_names: string[];
  attribute_names: string[];
  rows: string[];
}

export interface CommitResult {
  context_id: string;
  version: number;
  objects: number;
}

export interface OpenSessionRequest {
  name: string;
  attributes: string[];
  mode?: string;
  complement?: boolean;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public detail: string,
    public rebaseRequired = false,
  ) {
    super(detail);
  }
}

export class Client {
  constructor(private base: string) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(this.base + path, init);
    const body = await response.json().catch(() => ({}));
    if (!response.ok) {
      throw new ApiError(
        response.status,
        typeof body.detail === 'string' ? body.detail : response.statusText,
        body.rebase_required === true,
      );
    }
    return body as T;
  }

  private post<T>(path: string, payload?: unknown): Promise<T> {
    return this.request<T>(path, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(payload ?? {}),
    });
  }

  health(): Promise<{ status: string }> {
    return this.request('/health');
  }

  listContexts(): Promise<ContextSummary[]> {
    return this.request<{ contexts: ContextSummary[] }>('/contexts').then(
      (body) => body.contexts,
    );
  }

  createContext(format: string, text: string): Promise<ContextSummary> {
    return this.post('/contexts', { format, text });
  }

  getContext(id: string): Promise<ContextDetail> {
    return this.request(`/contexts/${id}`);
  }

  openSession(contextId: string, req: OpenSessionRequest): Promise<SessionView> {
    return this.post(`/contexts/${contextId}/sessions`, req);
  }

  getSession(id: string): Promise<SessionView> {
    return this.request(`/sessions/${id}`);
  }

  answer(sessionId: string, questionId: string, verdict: 'accept' | 'reject'): Promise<SessionView> {
    return this.post(`/sessions/${sessionId}/answers`, {
      question_id: questionId,
      verdict,
    });
  }

  commit(sessionId: string): Promise<CommitResult> {
    return this.post(`/sessions/${sessionId}/commit`);
  }

  rebase(sessionId: string): Promise<SessionView> {
    return this.post(`/sessions/${sessionId}/rebase`);
  }
}
