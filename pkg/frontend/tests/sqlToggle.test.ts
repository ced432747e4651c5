import { describe, expect, it } from "vitest";

import { SqlToggle, sqlPanelView } from "../src/sqlToggle.js";
import { FakeService, askedStore } from "./fakes.js";
import { ASKED, WHERE_REF, WHERE_STEP_RESULT } from "./fixtures.js";

describe("raw SQL toggle", () => {
  it("starts collapsed and flips on each click", () => {
    const toggle = new SqlToggle();
    expect(toggle.visible).toBe(false);
    expect(toggle.toggle()).toBe(true);
    expect(toggle.toggle()).toBe(false);
    toggle.show();
    expect(toggle.visible).toBe(true);
    toggle.hide();
    expect(toggle.visible).toBe(false);
  });

  it("only reveals the generated query while open", () => {
    const collapsed = sqlPanelView(false, ASKED, { kind: "empty" });
    expect(collapsed).toEqual({ visible: false, sql: null, tempSql: null });

    const open = sqlPanelView(true, ASKED, { kind: "empty" });
    expect(open.sql).toBe(ASKED.sql);
    expect(open.tempSql).toBeNull();
  });

  it("has nothing to show before a question is asked", () => {
    expect(sqlPanelView(true, null, { kind: "empty" }).sql).toBeNull();
  });

  it("surfaces a selected step's temporary SQL regardless of the toggle", async () => {
    const service = new FakeService();
    const store = await askedStore(service);
    service.replyJson(WHERE_STEP_RESULT);
    await store.selectStep(WHERE_REF);

    expect(store.sqlToggle.visible).toBe(false);
    expect(store.sqlPanel.tempSql).toBe(WHERE_STEP_RESULT.temp_sql);
    expect(store.sqlPanel.sql).toBeNull();

    store.sqlToggle.toggle();

    expect(store.sqlPanel).toEqual({
      visible: true,
      sql: ASKED.sql,
      tempSql: WHERE_STEP_RESULT.temp_sql,
    });
  });
});
