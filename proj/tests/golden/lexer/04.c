#define MSG_MAX 0x10
#ifdef CONFIG_SYSVIPC
static int flag = MSG_MAX;
#endif
