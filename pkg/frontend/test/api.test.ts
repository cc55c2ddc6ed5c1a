/** Client-level round trips against the live service. */

import { describe, expect, it } from 'vitest';

import { ApiError } from '../src/api.js';
import { CASE2_ATTRS, newClient, QUAD_CXT } from './helpers.js';

describe('api client', () => {
  it('reports service health', async () => {
    const client = newClient();
    expect(await client.health()).toEqual({ status: 'ok' });
  });

  it('uploads a context and reads it back', async () => {
    const client = newClient();
    const created = await client.createContext('cxt', QUAD_CXT);
    expect(created.objects).toBe(12);
    expect(created.attributes).toBe(7);
    const detail = await client.getContext(created.id);
    expect(detail.object_names[0]).toBe('Square');
    expect(detail.rows[0]).toBe('XXXXX..');
    const listed = await client.listContexts();
    expect(listed.map((c) => c.id)).toContain(created.id);
  });

  it('surfaces server errors with their detail', async () => {
    const client = newClient();
    await expect(client.createContext('cxt', 'garbage')).rejects.toThrowError(ApiError);
    await expect(client.getContext('ffffffffffff')).rejects.toMatchObject({
      status: 404,
    });
  });

  it('drives a full session without any DOM', async () => {
    const client = newClient();
    const ctx = await client.createContext('cxt', QUAD_CXT);
    const opened = await client.openSession(ctx.id, {
      name: 'Case2',
      attributes: CASE2_ATTRS,
    });
    expect(opened.state).toBe('questioning');
    expect(opened.questions).toHaveLength(1);
    expect(opened.hand_checks).toHaveLength(0);

    const answered = await client.answer(opened.id, opened.questions[0].id, 'accept');
    expect(answered.state).toBe('clean');
    expect(answered.candidate.attributes).toHaveLength(5);

    const committed = await client.commit(opened.id);
    expect(committed.version).toBe(2);
    expect(committed.objects).toBe(13);
    const child = await client.getContext(committed.context_id);
    expect(child.object_names).toContain('Case2');
  });
});
