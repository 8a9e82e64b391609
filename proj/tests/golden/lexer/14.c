static int __init ipc_init(void)
{
	int err = sem_init();

	if (err)
		goto out;
	msg_init();
	shm_init();
out:
	return err;
}
